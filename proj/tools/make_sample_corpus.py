#!/usr/bin/env python3
"""Regenerates data/sample_corpus.csv, the bundled desk-scale corpus.

Rows come from the CSS4 and XKCD color tables shipped with matplotlib plus
three synthetic "vendor" sources that re-spell XKCD names (title case with
punctuation, shouting, merged words) at slightly jittered RGB values.
Output is deterministic for a given matplotlib version.
"""
import argparse
import csv
import random
import re

from matplotlib import colors as mcolors


def to_rgb(hexcode):
    h = hexcode.lstrip('#')
    return tuple(int(h[i:i + 2], 16) for i in (0, 2, 4))


def jitter(rgb, rng, amount=6):
    return tuple(max(0, min(255, c + rng.randint(-amount, amount))) for c in rgb)


def letters_key(name):
    return re.sub(r'[^a-z]', '', name.lower())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument('--out', default='data/sample_corpus.csv')
    parser.add_argument('--seed', type=int, default=20251015)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    rows = []
    seen = set()

    def add(name, rgb, source):
        key = (letters_key(name), rgb, source)
        if key in seen or not letters_key(name):
            return
        seen.add(key)
        rows.append((name, '#%02x%02x%02x' % rgb, '%d;%d;%d' % rgb, source))

    for name, hexcode in sorted(mcolors.CSS4_COLORS.items()):
        add(name, to_rgb(hexcode), 'css_named')

    xkcd = sorted((k[len('xkcd:'):], v) for k, v in mcolors.XKCD_COLORS.items())
    multi = [(n, h) for n, h in xkcd if ' ' in n]

    for name, hexcode in rng.sample(xkcd, 450):
        add(name, to_rgb(hexcode), 'xkcd_survey')
    add('light sky blue', to_rgb('#87cefa'), 'xkcd_survey')

    add('Snow White', (242, 240, 235), 'paint_catalog')
    for name, hexcode in rng.sample(multi, 150):
        styled = '-'.join(w.capitalize() for w in name.split()) if rng.random() < 0.5 else name.title()
        add(styled, jitter(to_rgb(hexcode), rng), 'paint_catalog')

    for name, hexcode in rng.sample(xkcd, 130):
        add(name.upper() + rng.choice(['', '!', ' (TM)', ' #2']), jitter(to_rgb(hexcode), rng), 'fabric_swatches')

    for name, hexcode in rng.sample(multi, 120):
        add(name.replace(' ', ''), jitter(to_rgb(hexcode), rng), 'web_palette')

    with open(args.out, 'w', newline='') as fh:
        writer = csv.writer(fh, lineterminator='\n')
        writer.writerow(['name', 'hex', 'rgb', 'source'])
        writer.writerows(rows)
    print(f'wrote {len(rows)} rows to {args.out}')


if __name__ == '__main__':
    main()
