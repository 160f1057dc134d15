#!/usr/bin/env python3
# Copyright 2026 The ScriptWriter Authors.
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
"""Monte-Carlo reference run for HRR binding/unbinding at dim 512.

Uses numpy's own RNG and FFT, so it shares nothing with the C++ code. The
output is committed as tests/data/hrr_montecarlo.json and the tests compare
the C++ statistics against it.
"""

import json
import sys

import numpy as np

DIM = 512
TRIALS = 1000


def unit(rng, n):
    v = rng.normal(0.0, 1.0 / np.sqrt(n), n)
    return v / np.linalg.norm(v)


def conv(x, y):
    return np.fft.irfft(np.fft.rfft(x) * np.fft.rfft(y), len(x))


def corr(x, z):
    return np.fft.irfft(np.conj(np.fft.rfft(x)) * np.fft.rfft(z), len(x))


def cos(a, b):
    return float(a @ b / (np.linalg.norm(a) * np.linalg.norm(b)))


def main():
    rng = np.random.default_rng(20260101)
    sims, hits = [], 0
    for _ in range(TRIALS):
        book = np.stack([unit(rng, DIM) for _ in range(100)])
        x = unit(rng, DIM)
        y = book[0]
        decoded = corr(x, conv(x, y))
        sims.append(cos(decoded, y))
        scores = book @ decoded / np.linalg.norm(book, axis=1)
        hits += int(np.argmax(scores) == 0)

    # 3-term paths over a 50-term codebook: trace = a(*)r(*)b, probe = a(*)r.
    path_hits, path_sims = 0, []
    for _ in range(TRIALS):
        book = np.stack([unit(rng, DIM) for _ in range(50)])
        a, r, b = rng.choice(50, 3, replace=False)
        trace = conv(conv(book[a], book[r]), book[b])
        decoded = corr(conv(book[a], book[r]), trace)
        scores = book @ decoded / (np.linalg.norm(book, axis=1) * np.linalg.norm(decoded))
        path_hits += int(np.argmax(scores) == b)
        path_sims.append(float(scores[b]))

    # Unrelated trace and probe: best cleanup similarity.
    noise = []
    for _ in range(TRIALS):
        book = np.stack([unit(rng, DIM) for _ in range(50)])
        decoded = corr(unit(rng, DIM), unit(rng, DIM))
        scores = book @ decoded / (np.linalg.norm(book, axis=1) * np.linalg.norm(decoded))
        noise.append(float(scores.max()))

    json.dump({
        "dim": DIM,
        "trials": TRIALS,
        "unbind_mean_cosine": float(np.mean(sims)),
        "unbind_std_cosine": float(np.std(sims)),
        "unbind_min_cosine": float(np.min(sims)),
        "cleanup100_accuracy": hits / TRIALS,
        "path3_cleanup50_accuracy": path_hits / TRIALS,
        "path3_mean_similarity": float(np.mean(path_sims)),
        "path3_min_similarity": float(np.min(path_sims)),
        "unrelated_max_similarity_mean": float(np.mean(noise)),
        "unrelated_max_similarity_max": float(np.max(noise)),
    }, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
