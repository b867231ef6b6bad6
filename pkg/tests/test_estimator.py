import pytest
from sklearn.base import clone

from holz.errors import InvalidArgumentError
from holz.estimator import HolzCompressor


def test_params_and_clone():
    est = HolzCompressor(method="lz-opt", code="gamma")
    assert est.get_params() == {"method": "lz-opt", "code": "gamma", "escape_zero": False}
    twin = clone(est).set_params(escape_zero=True)
    assert twin.get_params()["escape_zero"] is True


def test_fit_transform_inverse():
    data = [b"banana bandana", b"", b"\x00\x01\x00\x01\x00"]
    est = HolzCompressor(escape_zero=True)
    blobs = est.fit_transform(data)
    assert all(b.startswith(b"HOLZ") for b in blobs)
    assert [i.n for i in est.last_info_] == [14, 0, 8]
    assert est.inverse_transform(blobs) == data


def test_invalid_params():
    with pytest.raises(InvalidArgumentError):
        HolzCompressor(method="bzip").fit()
    with pytest.raises(InvalidArgumentError):
        HolzCompressor(code="binary-length").fit()
