"""scikit-learn style wrapper around the container codecs."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from holz.bitio import Code
from holz.container import Method, compress_with_info, decompress
from holz.errors import InvalidArgumentError


class HolzCompressor(TransformerMixin, BaseEstimator):
    """Compress a sequence of byte strings into ``.holz`` containers.

    The codecs are stateless, so :meth:`fit` only validates parameters.
    After :meth:`transform`, ``last_info_`` holds one
    :class:`~holz.container.CompressionInfo` per input.

    >>> HolzCompressor(method="lz-rightmost").fit_transform([b"abab"])[0][:4]
    b'HOLZ'
    """

    def __init__(self, method="holz", code="delta", escape_zero=False):
        self.method = method
        self.code = code
        self.escape_zero = escape_zero

    def _validated(self):
        method = Method.parse(self.method)
        code = Code.parse(self.code)
        if not code.decodable:
            raise InvalidArgumentError("only gamma and delta can be written to a container")
        return method, code

    def fit(self, X=None, y=None):
        self.method_, self.code_ = self._validated()
        return self

    def transform(self, X):
        method, code = self._validated()
        out, infos = [], []
        for raw in X:
            blob, info = compress_with_info(bytes(raw), method, code, bool(self.escape_zero))
            out.append(blob)
            infos.append(info)
        self.last_info_ = infos
        return out

    def inverse_transform(self, X):
        return [decompress(blob) for blob in X]
