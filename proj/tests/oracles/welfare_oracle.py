"""Reference Monte Carlo for the welfare change under plurality.

Voters draw u ~ Dirichlet(theta), vote for argmax u (standard) and for
argmax (1 - alpha) u + alpha w (anchored). Welfare of a tied outcome is the
mean over tied winners. Prints Pr[delta < 0], E[exp(-delta)], E[delta] with
standard errors.
"""
import sys

import numpy as np


def run(theta, w, alpha, n, samples, seed):
    rng = np.random.default_rng(seed)
    theta = np.asarray(theta, float)
    w = np.asarray(w, float)
    m = len(theta)
    out = []
    chunk = 100_000
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        u = rng.dirichlet(theta, size=(k, n))                 # k x n x m
        std_votes = u.argmax(axis=2)
        anc_votes = ((1 - alpha) * u + alpha * w).argmax(axis=2)
        welfare = u.sum(axis=1)                                # k x m
        def outcome(votes):
            counts = np.stack([(votes == a).sum(axis=1) for a in range(m)], axis=1)
            top = counts == counts.max(axis=1, keepdims=True)
            return (welfare * top).sum(axis=1) / top.sum(axis=1), top
        sw_std, top_std = outcome(std_votes)
        sw_anc, top_anc = outcome(anc_votes)
        same = (top_std == top_anc).all(axis=1)
        delta = np.where(same, 0.0, sw_anc - sw_std)
        out.append(delta)
        done += k
    d = np.concatenate(out)
    dec = (d < 0).mean()
    e = np.exp(-d)
    return {
        "decrease": (dec, np.sqrt(dec * (1 - dec) / len(d))),
        "chernoff": (e.mean(), e.std(ddof=1) / np.sqrt(len(d))),
        "delta": (d.mean(), d.std(ddof=1) / np.sqrt(len(d))),
    }


if __name__ == "__main__":
    res = run([3, 2, 1], [0.5, 0.3, 0.2], 0.3, 7, 1_000_000, 20261018)
    for k, (v, s) in res.items():
        print(f"{k}: {v!r} +- {s!r}")
    sys.stdout.flush()
