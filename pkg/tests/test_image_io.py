import numpy as np
import pytest

from vplume.image_io import ImageFormatError, load_image, save_image


@pytest.fixture
def random_rgb():
    return np.random.default_rng(31).random((13, 17, 3))


class TestRoundtrip:
    @pytest.mark.parametrize("ext", ["png", "ppm"])
    def test_color_roundtrip_within_quantization(self, tmp_path, random_rgb, ext):
        path = tmp_path / f"img.{ext}"
        save_image(random_rgb, path)
        back = load_image(path)
        assert back.shape == random_rgb.shape
        assert np.abs(back - random_rgb).max() <= 1.0 / 255.0 + 1e-12

    def test_gray_pgm_roundtrip(self, tmp_path):
        gray = np.random.default_rng(32).random((9, 6))
        img = np.stack([gray, gray, gray], axis=2)
        path = tmp_path / "img.pgm"
        save_image(img, path)
        back = load_image(path)
        assert np.abs(back - img).max() <= 1.0 / 255.0 + 1e-12
        np.testing.assert_array_equal(back[:, :, 0], back[:, :, 1])

    def test_pgm_rejects_color(self, tmp_path, random_rgb):
        with pytest.raises(ImageFormatError):
            save_image(random_rgb, tmp_path / "img.pgm")

    def test_gray_png_loads_as_rgb(self, tmp_path):
        from PIL import Image

        data = np.arange(24, dtype=np.uint8).reshape(4, 6) * 10
        Image.fromarray(data, mode="L").save(tmp_path / "gray.png")
        back = load_image(tmp_path / "gray.png")
        assert back.shape == (4, 6, 3)
        np.testing.assert_allclose(back[:, :, 0], data / 255.0, atol=1e-12)
        np.testing.assert_array_equal(back[:, :, 0], back[:, :, 2])

    def test_save_load_is_deterministic(self, tmp_path, random_rgb):
        save_image(random_rgb, tmp_path / "a.png")
        save_image(random_rgb, tmp_path / "b.png")
        assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


class TestErrors:
    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_image(tmp_path / "nope.png")

    def test_unsupported_magic(self, tmp_path):
        path = tmp_path / "img.jpg"
        path.write_bytes(b"\xff\xd8\xff\xe0" + b"\x00" * 64)
        with pytest.raises(ImageFormatError):
            load_image(path)

    def test_zero_dimension_header(self, tmp_path):
        path = tmp_path / "bad.ppm"
        path.write_bytes(b"P6\n0 5\n255\n")
        with pytest.raises(ImageFormatError, match="zero-dimension"):
            load_image(path)

    def test_sixteen_bit_netpbm_rejected(self, tmp_path):
        path = tmp_path / "deep.ppm"
        path.write_bytes(b"P6\n2 2\n65535\n" + b"\x00" * 24)
        with pytest.raises(ImageFormatError):
            load_image(path)

    def test_truncated_netpbm(self, tmp_path):
        path = tmp_path / "short.ppm"
        path.write_bytes(b"P6\n4 4\n255\n" + b"\x01" * 10)
        with pytest.raises(ImageFormatError, match="truncated"):
            load_image(path)

    def test_rgba_png_rejected(self, tmp_path):
        from PIL import Image

        rgba = np.zeros((4, 4, 4), dtype=np.uint8)
        Image.fromarray(rgba, mode="RGBA").save(tmp_path / "a.png")
        with pytest.raises(ImageFormatError, match="unsupported"):
            load_image(tmp_path / "a.png")

    def test_unknown_save_extension(self, tmp_path, random_rgb):
        with pytest.raises(ImageFormatError):
            save_image(random_rgb, tmp_path / "img.bmp")


class TestNetpbmParsing:
    def test_comments_in_header(self, tmp_path):
        body = bytes(range(12))
        path = tmp_path / "c.ppm"
        path.write_bytes(b"P6\n# a comment\n2 # inline\n2\n255\n" + body)
        img = load_image(path)
        assert img.shape == (2, 2, 3)
        assert img[0, 0, 0] == 0.0
        assert img[0, 0, 1] == pytest.approx(1.0 / 255.0)

    def test_pgm_magic_sniffed_regardless_of_name(self, tmp_path):
        path = tmp_path / "actually_pgm.png"
        path.write_bytes(b"P5\n2 1\n255\n\x10\x20")
        img = load_image(path)
        assert img.shape == (1, 2, 3)
        assert img[0, 0, 0] == pytest.approx(16 / 255.0)
