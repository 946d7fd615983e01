import numpy as np
import pytest

from tritone.image import (
    ImageU8,
    Plane,
    merge_channels,
    read_image,
    read_pnm,
    split_channels,
    write_image,
    write_pnm,
)


class TestBufferTypes:
    def test_image_shape_and_data(self):
        img = ImageU8(2, 1, 3, [1, 2, 3, 4, 5, 6])
        assert img.pixels.shape == (1, 2, 3)
        assert img.data.tolist() == [1, 2, 3, 4, 5, 6]

    def test_image_data_is_frozen(self):
        img = ImageU8(1, 1, 1, [7])
        with pytest.raises(ValueError):
            img.data[0] = 8

    def test_image_owns_its_buffer(self):
        source = np.array([1, 2, 3], dtype=np.uint8)
        img = ImageU8(3, 1, 1, source)
        source[0] = 99
        assert img.data[0] == 1

    @pytest.mark.parametrize(
        "width,height,channels,n",
        [(0, 1, 1, 0), (1, 0, 1, 0), (1, 1, 2, 2), (1, 1, 4, 4)],
    )
    def test_image_rejects_bad_geometry(self, width, height, channels, n):
        with pytest.raises(ValueError):
            ImageU8(width, height, channels, [0] * n)

    def test_image_rejects_wrong_buffer_length(self):
        with pytest.raises(ValueError):
            ImageU8(2, 2, 3, [0] * 11)

    def test_plane_rejects_wrong_buffer_length(self):
        with pytest.raises(ValueError):
            Plane(3, 2, [0] * 5)

    def test_from_array_roundtrip(self):
        arr = np.arange(24, dtype=np.uint8).reshape(2, 4, 3)
        img = ImageU8.from_array(arr)
        assert (img.width, img.height, img.channels) == (4, 2, 3)
        assert np.array_equal(img.pixels, arr)

    def test_value_equality(self):
        a = ImageU8(1, 2, 1, [5, 6])
        b = ImageU8(1, 2, 1, [5, 6])
        c = ImageU8(1, 2, 1, [5, 7])
        assert a == b
        assert a != c
        assert Plane(1, 1, [3]) == Plane(1, 1, [3])


class TestSplitMerge:
    def test_split_rgb_single_pixel(self):
        img = ImageU8(1, 1, 3, [10, 20, 30])
        planes = split_channels(img)
        assert [p.data.tolist() for p in planes] == [[10], [20], [30]]

    def test_split_grayscale_is_identity(self):
        img = ImageU8(3, 2, 1, [1, 2, 3, 4, 5, 6])
        (plane,) = split_channels(img)
        assert plane.data.tolist() == img.data.tolist()
        assert (plane.width, plane.height) == (3, 2)

    def test_merge_single_pixel(self):
        planes = [Plane(1, 1, [10]), Plane(1, 1, [20]), Plane(1, 1, [30])]
        assert merge_channels(planes) == ImageU8(1, 1, 3, [10, 20, 30])

    def test_merge_single_plane(self):
        plane = Plane(2, 2, [9, 8, 7, 6])
        img = merge_channels([plane])
        assert img.channels == 1
        assert img.data.tolist() == [9, 8, 7, 6]

    def test_merge_rejects_bad_plane_count(self):
        plane = Plane(1, 1, [0])
        with pytest.raises(ValueError):
            merge_channels([plane, plane])

    def test_merge_rejects_mismatched_dimensions(self):
        with pytest.raises(ValueError):
            merge_channels([Plane(1, 1, [0]), Plane(2, 1, [0, 0]), Plane(1, 1, [0])])

    def test_split_merge_roundtrip_random(self):
        rng = np.random.default_rng(11)
        img = ImageU8(4, 4, 3, rng.integers(0, 256, size=48, dtype=np.uint8))
        assert merge_channels(split_channels(img)) == img

    def test_merge_split_roundtrip_random(self):
        rng = np.random.default_rng(12)
        planes = [Plane(8, 8, rng.integers(0, 256, size=64, dtype=np.uint8)) for _ in range(3)]
        assert split_channels(merge_channels(planes)) == planes


class TestPnmCodec:
    def test_read_p6(self):
        img = read_pnm(b"P6\n2 1\n255\n" + bytes([1, 2, 3, 4, 5, 6]))
        assert (img.width, img.height, img.channels) == (2, 1, 3)
        assert img.data.tolist() == [1, 2, 3, 4, 5, 6]

    def test_read_p5(self):
        img = read_pnm(b"P5\n1 1\n255\n" + bytes([200]))
        assert (img.width, img.height, img.channels) == (1, 1, 1)
        assert img.data.tolist() == [200]

    def test_read_accepts_comments_and_odd_whitespace(self):
        raw = b"P5 # binary graymap\n# a comment line\n  2\t1 # trailing\r\n255 " + bytes([9, 10])
        img = read_pnm(raw)
        assert (img.width, img.height) == (2, 1)
        assert img.data.tolist() == [9, 10]

    def test_write_p5_canonical(self):
        assert write_pnm(ImageU8(1, 1, 1, [0])) == b"P5\n1 1\n255\n\x00"

    def test_write_p6_canonical(self):
        img = ImageU8(2, 1, 3, [1, 2, 3, 4, 5, 6])
        assert write_pnm(img) == b"P6\n2 1\n255\n" + bytes([1, 2, 3, 4, 5, 6])

    def test_write_is_deterministic(self):
        rng = np.random.default_rng(3)
        img = ImageU8(5, 4, 3, rng.integers(0, 256, size=60, dtype=np.uint8))
        assert write_pnm(img) == write_pnm(ImageU8(5, 4, 3, img.data))

    @pytest.mark.parametrize("channels", [1, 3])
    def test_roundtrip_read_of_write(self, channels):
        rng = np.random.default_rng(channels)
        img = ImageU8(6, 3, channels, rng.integers(0, 256, size=18 * channels, dtype=np.uint8))
        assert read_pnm(write_pnm(img)) == img

    def test_roundtrip_write_of_read(self):
        raw = b"P6\n3 2\n255\n" + bytes(range(18))
        assert write_pnm(read_pnm(raw)) == raw

    @pytest.mark.parametrize(
        "raw",
        [
            b"P4\n1 1\n255\n\x00",  # wrong magic
            b"P5\n1 1\n65535\n\x00\x00",  # 16-bit maxval
            b"P5\n0 1\n255\n",  # zero width
            b"P5\n1 1\n255\n",  # truncated payload
            b"P6\n2 2\n255\n" + bytes(11),  # short payload
            b"P5\nx 1\n255\n\x00",  # non-numeric token
            b"P5\n1 1",  # truncated header
            b"",
        ],
    )
    def test_read_rejects_malformed_input(self, raw):
        with pytest.raises(ValueError):
            read_pnm(raw)


class TestPathIo:
    def test_pnm_file_roundtrip(self, tmp_path):
        img = ImageU8(3, 2, 3, list(range(18)))
        path = tmp_path / "img.ppm"
        write_image(path, img)
        assert read_image(path) == img

    def test_unsupported_extension(self, tmp_path):
        with pytest.raises(ValueError):
            write_image(tmp_path / "img.tiff", ImageU8(1, 1, 1, [0]))

    @pytest.mark.parametrize("channels,suffix", [(1, ".png"), (3, ".png")])
    def test_png_roundtrip(self, tmp_path, channels, suffix):
        pytest.importorskip("PIL")
        rng = np.random.default_rng(21)
        img = ImageU8(5, 7, channels, rng.integers(0, 256, size=35 * channels, dtype=np.uint8))
        path = tmp_path / f"img{suffix}"
        write_image(path, img)
        assert read_image(path) == img
