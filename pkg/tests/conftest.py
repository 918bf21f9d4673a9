import numpy as np
import pytest

from vplume.image_io import save_image

GAMMAS = (2.0, 3.0, 4.0)


def synth_natural_crop(rng, h=48, w=64):
    """Synthetic stand-in for a natural-image crop.

    Low-frequency structure plus fine texture, midtone-heavy, channels
    correlated like real photographs.  Deterministic given the rng.
    """
    yy, xx = np.mgrid[0:h, 0:w].astype(float)
    base = np.zeros((h, w))
    for _ in range(4):
        fx, fy = rng.uniform(0.4, 2.5, size=2)
        px, py = rng.uniform(0.0, 2.0 * np.pi, size=2)
        base += rng.uniform(0.15, 0.4) * np.sin(2 * np.pi * fx * xx / w + px) * np.sin(
            2 * np.pi * fy * yy / h + py
        )
    base += rng.normal(0.0, 0.04, size=(h, w))
    base = (base - base.min()) / (base.max() - base.min())
    base = 0.1 + 0.85 * base

    channels = []
    for _ in range(3):
        gain = rng.uniform(0.85, 1.0)
        cast = rng.normal(0.0, 0.015, size=(h, w))
        channels.append(np.clip(base * gain + cast, 0.0, 1.0))
    return np.stack(channels, axis=2)


@pytest.fixture(scope="session")
def natural_corpus():
    rng = np.random.default_rng(20240817)
    return [synth_natural_crop(rng) for _ in range(10)]


@pytest.fixture(scope="session")
def darkened_corpus(natural_corpus):
    """(gamma, original, darkened) for every crop and gamma in {2, 3, 4}."""
    return [(g, img, img**g) for img in natural_corpus for g in GAMMAS]


@pytest.fixture(scope="session")
def dark_png_dir(tmp_path_factory, darkened_corpus):
    """Gamma-darkened corpus written out as 8-bit PNGs."""
    root = tmp_path_factory.mktemp("dark_corpus")
    for idx, (g, _, dark) in enumerate(darkened_corpus):
        save_image(dark, root / f"crop{idx:02d}_g{int(g)}.png")
    return root
