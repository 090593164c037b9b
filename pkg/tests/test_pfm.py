import io

import numpy as np
import pytest

from fillight.pfm import read_pfm, write_pfm


class TestPfm:
    def test_round_trip_gray(self, tmp_path):
        data = np.random.default_rng(0).random((5, 9)).astype(np.float32)
        path = tmp_path / "d.pfm"
        write_pfm(path, data)
        assert np.array_equal(read_pfm(path), data)

    def test_round_trip_color(self, tmp_path):
        data = np.random.default_rng(1).standard_normal((7, 4, 3)).astype(np.float32)
        path = tmp_path / "n.pfm"
        write_pfm(path, data)
        assert np.array_equal(read_pfm(path), data)

    def test_header_and_bottom_up_rows(self, tmp_path):
        data = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=np.float32)
        path = tmp_path / "h.pfm"
        write_pfm(path, data)
        raw = path.read_bytes()
        assert raw.startswith(b"Pf\n2 2\n-1.0\n")
        # bottom row first in the payload
        payload = np.frombuffer(raw[len(b"Pf\n2 2\n-1.0\n"):], dtype="<f4")
        assert payload.tolist() == [3.0, 4.0, 1.0, 2.0]

    def test_write_to_buffer(self):
        buf = io.BytesIO()
        data = np.ones((3, 3, 3), dtype=np.float32)
        write_pfm(buf, data)
        assert buf.getvalue().startswith(b"PF\n3 3\n")

    def test_big_endian_read(self, tmp_path):
        data = np.arange(6, dtype=np.float32).reshape(2, 3)
        path = tmp_path / "be.pfm"
        with open(path, "wb") as f:
            f.write(b"Pf\n3 2\n1.0\n")
            f.write(np.flipud(data).astype(">f4").tobytes())
        assert np.array_equal(read_pfm(path), data)

    def test_bad_inputs(self, tmp_path):
        with pytest.raises(ValueError):
            write_pfm(tmp_path / "x.pfm", np.zeros((2, 2, 4)))
        bad = tmp_path / "bad.pfm"
        bad.write_bytes(b"P6\n1 1\n255\n\x00")
        with pytest.raises(ValueError):
            read_pfm(bad)
        trunc = tmp_path / "trunc.pfm"
        trunc.write_bytes(b"Pf\n4 4\n-1.0\n\x00\x00")
        with pytest.raises(ValueError):
            read_pfm(trunc)
