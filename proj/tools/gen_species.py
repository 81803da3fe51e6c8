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
"""Generates the synthetic species files in data/species.

The tensors are reconstructions, not literature values: principal values are
solved so that a few published spectroscopic numbers are reproduced (zero-field
hyperfine gaps, one Zeeman slope), while the principal-axis orientations are
fixed, arbitrary Euler angles. Replace the files with measured tensors for
quantitative work.
"""

import json
import pathlib

import numpy as np
from scipy.optimize import brentq, fsolve

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "species"


def spin_ops(mult):
    s = (mult - 1) / 2
    m = s - np.arange(mult)
    sp = np.zeros((mult, mult))
    for k in range(1, mult):
        sp[k - 1, k] = np.sqrt(s * (s + 1) - m[k] * (m[k] + 1))
    sx = (sp + sp.T) / 2
    sy = (sp - sp.T) / 2j
    return [sx, sy, np.diag(m)]


def euler(a, b, c):
    def rz(t):
        return np.array([[np.cos(t), -np.sin(t), 0], [np.sin(t), np.cos(t), 0], [0, 0, 1]])

    def ry(t):
        return np.array([[np.cos(t), 0, np.sin(t)], [0, 1, 0], [-np.sin(t), 0, np.cos(t)]])

    return rz(a) @ ry(b) @ rz(c)


def quad_tensor(d, e, rot):
    return rot @ np.diag([-d / 3 + e, -d / 3 - e, 2 * d / 3]) @ rot.T


def nonkramers_levels(q, m, field):
    ops = spin_ops(6)
    h = sum(q[a, b] * ops[a] @ ops[b] for a in range(3) for b in range(3))
    h = h + sum(field[a] * m[a, b] * ops[b] for a in range(3) for b in range(3))
    return np.linalg.eigvalsh(h)


def zero_field_gaps(d, e):
    lv = nonkramers_levels(quad_tensor(d, e, np.eye(3)), np.zeros((3, 3)), np.zeros(3))
    return lv[2] - lv[0], lv[4] - lv[2]


def solve_quadrupole(gap1, gap2):
    def f(x):
        g1, g2 = zero_field_gaps(x[0], x[1])
        return [g1 - gap1, g2 - gap2]

    d, e = fsolve(f, [gap1 / 2, 0.1 * gap1])
    return d, abs(e)


def rounded(mat, digits=6):
    return [[float(f"{v:.{digits}g}") for v in row] for row in np.asarray(mat)]


def write(name, header, payload):
    body = ",\n".join(f'  "{k}": {json.dumps(v)}' for k, v in payload.items())
    text = "".join(f"// {line}\n" for line in header) + "{\n" + body + "\n}\n"
    (OUT / name).write_text(text)


def europium():
    d, e = solve_quadrupole(34.5e6, 46.2e6)
    rot_q = euler(0.35, 0.55, -0.2)
    q = quad_tensor(d, e, rot_q)
    rot_m = euler(-0.4, 0.3, 0.9)
    shape = rot_m @ np.diag([0.8, 0.9, 1.0]) @ rot_m.T
    d1 = np.array([1.0, 0, 0])

    def slope(scale, b=1e-4):
        lv = nonkramers_levels(q, scale * shape, b * d1)
        return (lv[5] - lv[4]) / b

    scale = brentq(lambda s: slope(s) - 14e6, 1e5, 1e8)
    write(
        "eu.json",
        [
            "Synthetic Eu (I = 5/2) effective nuclear Hamiltonian, generated by tools/gen_species.py.",
            "Zero-field gaps 34.5 MHz (+-1/2 -> +-3/2) and 46.2 MHz (+-3/2 -> +-5/2);",
            "the +-5/2 doublet splits by 14 kHz/mT for a field along D1. Axes are arbitrary.",
            "Levels are labeled 0..5 by energy at infinitesimal field; [4, 2] addresses +-5/2 <-> +-3/2.",
        ],
        {
            "species": "Eu",
            "kind": "nonkramers",
            "I_multiplicity": 6,
            "S_multiplicity": 1,
            "Q_Hz": rounded(q, 10),
            "M_Hz_per_T": rounded(scale * shape, 8),
            "transition": [4, 2],
        },
    )


def praseodymium():
    d, e = 4.44e6, 0.562e6
    rot_q = euler(1.1, 0.7, 0.4)
    q = quad_tensor(d, e, rot_q)
    rot_m = euler(0.6, 1.2, -0.5)
    m = rot_m @ np.diag([2.86e7, 3.05e7, 1.156e8]) @ rot_m.T
    write(
        "pr.json",
        [
            "Synthetic Pr (I = 5/2) effective nuclear Hamiltonian, generated by tools/gen_species.py.",
            "D = 4.44 MHz, E = 0.562 MHz (zero-field gaps near 10.2 and 17.3 MHz);",
            "enhanced gyromagnetic principal values 28.6, 30.5, 115.6 kHz/mT. Axes are arbitrary.",
            "[0, 2] addresses the lowest (10.2 MHz) hyperfine transition.",
        ],
        {
            "species": "Pr",
            "kind": "nonkramers",
            "I_multiplicity": 6,
            "S_multiplicity": 1,
            "Q_Hz": rounded(q, 10),
            "M_Hz_per_T": rounded(m, 8),
            "transition": [0, 2],
        },
    )


def ytterbium():
    g_principal = np.array([0.3, 1.6, 6.0])
    # E(A) sorted: the |2> <-> |4> gap is 2.85 kappa for A = kappa g.
    kappa = 2.497e9 / 2.85
    rot = euler(0.8, 0.45, 0.1)
    g = rot @ np.diag(g_principal) @ rot.T
    a = rot @ np.diag(kappa * g_principal) @ rot.T
    write(
        "yb.json",
        [
            "Synthetic 171Yb (I = S = 1/2) Kramers Hamiltonian, generated by tools/gen_species.py.",
            "Co-axial g and A tensors with A = kappa g, kappa chosen so that the |2> <-> |4>",
            "zero-field transition is 2.497 GHz. Axes are arbitrary.",
        ],
        {
            "species": "Yb",
            "kind": "kramers",
            "I_multiplicity": 2,
            "S_multiplicity": 2,
            "A_Hz": rounded(a, 10),
            "g": rounded(g, 10),
            "g_n": 0.98734,
            "transition": [1, 3],
        },
    )


def yttrium():
    write(
        "y.json",
        ["Yttrium-89 bath nucleus: spin 1/2, 2.1 kHz/mT."],
        {"species": "Y", "kind": "bare", "I_multiplicity": 2, "gamma_Hz_per_T": 2.1e6},
    )


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    europium()
    praseodymium()
    ytterbium()
    yttrium()
