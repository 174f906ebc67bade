#!/usr/bin/env python3
"""Generate the grayscale frost textures shipped in assets/frost.

Each texture is a 512x512 field of ice crystals: random seed points grow
short branching needles that are drawn additively, then the result is
lightly blurred and mixed with a fine grain. Output is deterministic.
"""

import argparse
import math
from pathlib import Path

import numpy as np
from PIL import Image, ImageFilter

SIZE = 512


def needle(canvas, rng, x, y, angle, length, width, depth):
    steps = int(length)
    dx, dy = math.cos(angle), math.sin(angle)
    for t in range(steps):
        px = int(x + dx * t) % SIZE
        py = int(y + dy * t) % SIZE
        fade = 1.0 - t / max(steps, 1)
        canvas[py, px] += width * fade
        if depth > 0 and rng.random() < 0.08:
            branch = angle + rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 1.1)
            needle(canvas, rng, x + dx * t, y + dy * t, branch, length * 0.45, width * 0.7, depth - 1)


def texture(seed):
    rng = np.random.default_rng(seed)
    canvas = np.zeros((SIZE, SIZE), dtype=np.float64)
    for _ in range(260):
        x, y = rng.uniform(0, SIZE, size=2)
        base = rng.uniform(0, 2 * math.pi)
        for k in range(int(rng.integers(3, 7))):
            angle = base + k * 2 * math.pi / 6 + rng.normal(0, 0.15)
            needle(canvas, rng, x, y, angle, rng.uniform(12, 60), rng.uniform(0.4, 1.0), 2)
    canvas = canvas / canvas.max()
    img = Image.fromarray((np.sqrt(canvas) * 255).astype(np.uint8), mode="L")
    img = img.filter(ImageFilter.GaussianBlur(1.2))
    arr = np.asarray(img, dtype=np.float64) / 255.0
    grain = rng.normal(0.0, 0.04, size=arr.shape)
    haze = 0.18 + 0.1 * rng.random()
    arr = np.clip(haze + 0.85 * arr + grain, 0.0, 1.0)
    return Image.fromarray(np.round(arr * 255).astype(np.uint8), mode="L")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "assets" / "frost")
    parser.add_argument("--count", type=int, default=5)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        texture(1000 + i).save(args.out / f"frost{i + 1}.png", optimize=False)
        print(args.out / f"frost{i + 1}.png")


if __name__ == "__main__":
    main()
