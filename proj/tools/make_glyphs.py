#!/usr/bin/env python3
# Copyright 2026 The qsvm-ocr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled glyph bitmaps under assets/.

Standard glyphs are rendered from STIX General (a Times-compatible serif
shipped with matplotlib). Handwritten-style glyphs are drawn as pen strokes
with seeded jitter. Output is deterministic for a given Pillow/font version;
the committed files are the reference, so rerun only when changing assets.
"""

import argparse
import math
import pathlib
import random

import matplotlib
from PIL import Image, ImageDraw, ImageFont

CANVAS = 96


def crop_to_ink(img, threshold=128):
    mask = img.point(lambda p: 255 if p < threshold else 0)
    box = mask.getbbox()
    return img.crop(box)


def write_pgm(path, img, binary=True):
    w, h = img.size
    data = img.tobytes()
    with open(path, "wb") as f:
        if binary:
            f.write(b"P5\n%d %d\n255\n" % (w, h))
            f.write(data)
        else:
            f.write(b"P2\n# handwritten-style glyph\n%d %d\n255\n" % (w, h))
            for y in range(h):
                row = data[y * w:(y + 1) * w]
                f.write((" ".join(str(b) for b in row) + "\n").encode())


def render_standard(ch):
    font_dir = pathlib.Path(matplotlib.get_data_path()) / "fonts" / "ttf"
    font = ImageFont.truetype(str(font_dir / "STIXGeneral.ttf"), 72)
    img = Image.new("L", (CANVAS, CANVAS), 255)
    ImageDraw.Draw(img).text((CANVAS // 2, CANVAS // 2), ch, font=font,
                             fill=0, anchor="mm")
    return crop_to_ink(img)


def polyline(draw, pts, width):
    for a, b in zip(pts, pts[1:]):
        draw.line([a, b], fill=0, width=width)
    for p in pts:
        r = width / 2
        draw.ellipse([p[0] - r, p[1] - r, p[0] + r, p[1] + r], fill=0)


def handwritten(digit, rng):
    img = Image.new("L", (CANVAS, CANVAS), 255)
    draw = ImageDraw.Draw(img)
    width = rng.randint(4, 7)
    slant = rng.uniform(-0.25, 0.25)
    loop_r = rng.uniform(13, 18)
    loop_ry = loop_r * rng.uniform(0.85, 1.15)
    cx = 48 + rng.uniform(-3, 3)

    def wob(p):
        x, y = p
        x += rng.uniform(-0.8, 0.8)
        y += rng.uniform(-0.8, 0.8)
        return (x + slant * (48 - y), y)

    # A nine is drawn as a six rotated by a half turn.
    cy = 62
    loop = [(cx + loop_r * math.cos(t), cy + loop_ry * math.sin(t))
            for t in [2 * math.pi * k / 40 for k in range(41)]]
    # Tail: from upper right, sweeping down the left side into the loop.
    tail = []
    for k in range(25):
        s = k / 24
        ang = math.pi * (1.6 - 0.65 * s) + rng.uniform(-0.02, 0.02)
        rad = 34 - 16 * s
        tail.append((cx + 4 + rad * math.cos(ang) * 0.9,
                     cy - 6 + rad * math.sin(ang) * 1.3))
    polyline(draw, [wob(p) for p in loop], width)
    polyline(draw, [wob(p) for p in tail], width)
    if digit == 9:
        img = img.rotate(180)
    return crop_to_ink(img)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve()
                                             .parent.parent / "assets"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    (out / "glyphs").mkdir(parents=True, exist_ok=True)
    (out / "test").mkdir(parents=True, exist_ok=True)

    write_pgm(out / "glyphs" / "standard_6.pgm", render_standard("6"))
    write_pgm(out / "glyphs" / "standard_9.pgm", render_standard("9"))

    rng = random.Random(20150401)
    digits = [6, 9, 9, 6, 6, 9, 6, 9]
    lines = []
    for i, d in enumerate(digits, start=1):
        name = "handwritten_%02d.pgm" % i
        write_pgm(out / "glyphs" / name, handwritten(d, rng), binary=(i % 2 == 0))
        lines.append("%s %d\n" % (name, d))
    with open(out / "glyphs" / "handwritten.txt", "w") as f:
        f.write("# file expected_character\n")
        f.writelines(lines)

    write_pgm(out / "test" / "all_ink_4x4.pgm", Image.new("L", (4, 4), 0), binary=False)
    write_pgm(out / "test" / "blank_4x4.pgm", Image.new("L", (4, 4), 255), binary=False)


if __name__ == "__main__":
    main()
