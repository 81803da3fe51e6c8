#!/usr/bin/env python3
# Copyright 2026 The Spinbath Authors
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
"""Generates data/positions/y_synthetic.csv.

A stand-in for crystallographic yttrium positions around the central ion:
random sequential addition at the yttrium number density of the host
(0.01876 per cubic angstrom) with a 3.4 angstrom hard-core distance, both to
the central ion and between sites. The seed is fixed so the file is
reproducible. Replace with positions from a structure file for quantitative
work.
"""

import argparse
import pathlib

import numpy as np

DENSITY = 0.01876  # Y per cubic angstrom
MIN_DISTANCE = 3.4  # angstrom


def generate(radius, seed):
    rng = np.random.default_rng(seed)
    target = int(round(DENSITY * 4.0 / 3.0 * np.pi * radius**3))
    sites = [np.zeros(3)]  # the central ion occupies the origin
    attempts = 0
    while len(sites) < target + 1 and attempts < 2_000_000:
        attempts += 1
        p = rng.uniform(-radius, radius, 3)
        if np.linalg.norm(p) > radius:
            continue
        if min(np.linalg.norm(p - s) for s in sites) < MIN_DISTANCE:
            continue
        sites.append(p)
    out = np.array(sites[1:])
    return out[np.argsort(np.linalg.norm(out, axis=1), kind="stable")]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--radius", type=float, default=11.0, help="sphere radius (angstrom)")
    parser.add_argument("--seed", type=int, default=20260101)
    parser.add_argument(
        "--out",
        type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parent.parent / "data" / "positions" / "y_synthetic.csv",
    )
    args = parser.parse_args()
    sites = generate(args.radius, args.seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w") as f:
        f.write("label,x_angstrom,y_angstrom,z_angstrom\n")
        for i, (x, y, z) in enumerate(sites, start=1):
            f.write(f"Y{i:03d},{x:.4f},{y:.4f},{z:.4f}\n")
    print(f"wrote {len(sites)} synthetic sites to {args.out}")


if __name__ == "__main__":
    main()
