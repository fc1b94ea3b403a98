#!/usr/bin/env python3
"""Regenerates tests/fixtures/fig5a_plateau.json.

Independent of the C++ code: the cat amplitudes come from mpmath at 50 digits,
the generator is assembled from the action of a1^dag a2 sigma_- + h.c. on
explicit (level, n1, n2) labels, and each sample is propagated exactly through
the eigendecomposition of that generator. The atomic entropy comes from a
partial trace over the field.
"""
import json
import sys

import mpmath as mp
import numpy as np

XI, Q, PHI = 10, 1, mp.pi / 2
N_MAX = 60
T_MAX, SAMPLES = 30.0, 3001
WINDOW = (10.0, 30.0)
EARLY = (0.0, 1.0)

mp.mp.dps = 50


def cat_coefficients():
    phase = mp.expj(PHI)
    c = [mp.mpf(XI) ** n / mp.sqrt(mp.factorial(n) * mp.factorial(n + Q)) * (1 + (-1) ** n * phase)
         for n in range(N_MAX + 1)]
    norm = mp.sqrt(mp.fsum(abs(x) ** 2 for x in c))
    return [complex(x / norm) for x in c]


def generator(initial):
    """Closure of the initial support under the Hamiltonian, with its matrix."""
    index, labels = {}, []

    def label_index(label):
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for label in initial:
        label_index(label)
    entries = []
    k = 0
    while k < len(labels):
        level, n1, n2 = labels[k]
        if level == "e" and n2 > 0:  # a1^dag a2 sigma_-
            entries.append((label_index(("g", n1 + 1, n2 - 1)), k, np.sqrt((n1 + 1) * n2)))
        if level == "g" and n1 > 0:  # a1 a2^dag sigma_+
            entries.append((label_index(("e", n1 - 1, n2 + 1)), k, np.sqrt(n1 * (n2 + 1))))
        k += 1
    h = np.zeros((len(labels), len(labels)))
    for i, j, v in entries:
        h[i, j] += v
    return labels, h


def atom_entropy(labels, psi):
    ee = sum(abs(a) ** 2 for (lv, _, _), a in zip(labels, psi) if lv == "e")
    gg = sum(abs(a) ** 2 for (lv, _, _), a in zip(labels, psi) if lv == "g")
    amp = dict(zip(labels, psi))
    eg = sum(a * np.conj(amp.get(("g", n1, n2), 0)) for (lv, n1, n2), a in amp.items() if lv == "e")
    rho = np.array([[ee, eg], [np.conj(eg), gg]])
    w = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    w = w[w > 0]
    return float(-(w * np.log(w)).sum())


def main(path):
    c = cat_coefficients()
    # the field carries n2 - n1 = Q; the ion starts excited
    support = [("e", n, n + Q) for n in range(N_MAX + 1)]
    labels, h = generator(support)
    psi0 = np.zeros(len(labels), dtype=complex)
    psi0[: N_MAX + 1] = c
    w, v = np.linalg.eigh(h)
    psi0_eig = v.T @ psi0

    times = np.array([T_MAX * k / (SAMPLES - 1) for k in range(SAMPLES)])
    s = np.array([atom_entropy(labels, v @ (np.exp(-1j * w * t) * psi0_eig)) for t in times])

    def stats(lo, hi):
        sel = s[(times >= lo) & (times <= hi)]
        mean = float(sel.mean())
        return mean, float(np.abs(sel - mean).max()), int(sel.size)

    mean, dev, count = stats(*WINDOW)
    early_mean, _, early_count = stats(*EARLY)
    fixture = {
        "preset": "fig5a",
        "quantity": "s_vn_atom",
        "window": list(WINDOW),
        "window_samples": count,
        "window_mean": mean,
        "window_max_deviation": dev,
        "early_window": list(EARLY),
        "early_samples": early_count,
        "early_mean": early_mean,
        "tolerance": 1e-8,
    }
    with open(path, "w") as out:
        json.dump(fixture, out, indent=2)
        out.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/fig5a_plateau.json")
