#!/usr/bin/env python3
# Copyright 2026 The pencil-lift Authors
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

"""Independent oracle for the frozen test fixtures.

Uses numpy's LAPACK eigensolver and cvxpy (conic solver) rather than the
library's Jacobi / Dykstra code paths. Writes tests/fixtures/oracle_fixtures.hpp.

    python3 tests/oracles/compute_fixtures.py
"""
import pathlib

import cvxpy as cp
import numpy as np

LICENSE_HEADER = [
    "// Copyright 2026 The pencil-lift Authors",
    "//",
    "// Licensed under the Apache License, Version 2.0 (the \"License\");",
    "// you may not use this file except in compliance with the License.",
    "// You may obtain a copy of the License at",
    "//",
    "//     http://www.apache.org/licenses/LICENSE-2.0",
    "//",
    "// Unless required by applicable law or agreed to in writing, software",
    "// distributed under the License is distributed on an \"AS IS\" BASIS,",
    "// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.",
    "// See the License for the specific language governing permissions and",
    "// limitations under the License.",
    "",
]

KEYS = ["00", "10", "01", "11", "20", "02"]


def unit(i, j):
    m = np.zeros((3, 3))
    m[i, j] = 1.0
    return m


def choi_map(a):
    return (2.0 / 3.0) * np.diag([a[0, 0] + a[1, 1], a[1, 1] + a[2, 2], a[2, 2] + a[0, 0]]) - a / 3.0


def basis(c, d):
    return {
        "00": unit(0, 0),
        "10": c * (unit(0, 1) + unit(1, 0)),
        "01": d * (unit(0, 2) + unit(2, 0)),
        "11": c * d * (unit(1, 2) + unit(2, 1)),
        "20": c * c * unit(1, 1),
        "02": d * d * unit(2, 2),
    }


def evaluate(p, a, b):
    return p["00"] + a * p["10"] + b * p["01"] + a * b * p["11"] + a * a * p["20"] + b * b * p["02"]


def hat(p, c, d):
    q = dict(p)
    q["00"] = p["00"] - p["20"] / c**2 - p["02"] / d**2
    return q


def distance_to_factorable(p):
    """min ||X - Y||_F over X in the affine constraint set, Y PSD."""
    n = p["00"].shape[0]
    X = cp.Variable((3 * n, 3 * n), hermitian=True)
    Y = cp.Variable((3 * n, 3 * n), hermitian=True)

    def blk(M, i, j):
        return M[i * n:(i + 1) * n, j * n:(j + 1) * n]

    cons = [Y >> 0,
            blk(X, 0, 0) == p["00"], blk(X, 1, 1) == p["20"], blk(X, 2, 2) == p["02"],
            blk(X, 0, 1) + blk(X, 1, 0) == p["10"],
            blk(X, 0, 2) + blk(X, 2, 0) == p["01"],
            blk(X, 1, 2) + blk(X, 2, 1) == p["11"]]
    prob = cp.Problem(cp.Minimize(cp.norm(X - Y, "fro")), cons)
    prob.solve(solver=cp.CLARABEL)
    return prob.value


def main():
    out = {}
    # Symmetrized Choi matrix: block (a,b) = Phi((E_ab + E_ba)/2).
    sym = np.block([[choi_map((unit(a, b) + unit(b, a)) / 2.0) for b in range(3)] for a in range(3)])
    sym_eigs = np.linalg.eigvalsh(sym)
    out["kChoiSymMinEigenvalue"] = sym_eigs[0]
    out["kChoiSymMaxEigenvalue"] = sym_eigs[-1]
    # Identity map on Sym3, symmetrized Choi matrix.
    ident = np.block([[(unit(a, b) + unit(b, a)) / 2.0 for b in range(3)] for a in range(3)])
    out["kIdentitySymChoiMinEigenvalue"] = np.linalg.eigvalsh(ident)[0]

    # Counterexample pipeline with c = d = 1 basis.
    P = {k: choi_map(v) for k, v in basis(1.0, 1.0).items()}
    out["kChoiPencilGap"] = distance_to_factorable(P)
    eps = abs(sym_eigs[0]) / 2.0
    out["kCounterexampleEpsilon"] = eps
    b00 = P["00"] + eps * np.eye(3)
    w, V = np.linalg.eigh(b00)
    delta_mat = V @ np.diag(w ** -0.5) @ V.T
    M = {k: delta_mat @ P[k] @ delta_mat for k in KEYS}
    M["00"] = delta_mat @ b00 @ delta_mat
    grid = np.linspace(-8.0, 8.0, 33)
    delta_grid = min(np.linalg.eigvalsh(evaluate(M, a, b))[0] for a in grid for b in grid)
    delta_cert = eps * np.linalg.eigvalsh(delta_mat @ delta_mat)[0]
    delta = min(delta_grid, delta_cert)
    out["kCounterexampleDeltaGrid"] = delta_grid
    out["kCounterexampleDelta"] = delta
    c0 = np.sqrt(np.linalg.eigvalsh(M["20"] + M["02"])[-1] / delta)
    out["kCounterexampleC0"] = c0
    out["kCounterexampleGapC0"] = distance_to_factorable(hat(M, c0, c0))
    out["kCounterexampleGap2C0"] = distance_to_factorable(hat(M, 2 * c0, 2 * c0))
    out["kCounterexampleGapAsym"] = distance_to_factorable(hat(M, 1.5 * c0, 3 * c0))
    # Largest epsilon for which eps*I added to B00 of the Choi pencil keeps it
    # non-factorable, and the skew-aware Choi margin used by the proof.
    n = 3
    G = cp.Variable((9, 9), hermitian=True)
    t = cp.Variable()

    def blk(M_, i, j):
        return M_[i * n:(i + 1) * n, j * n:(j + 1) * n]

    cons = [G >> 0, blk(G, 0, 0) == P["00"] + t * np.eye(3), blk(G, 1, 1) == P["20"],
            blk(G, 2, 2) == P["02"], blk(G, 0, 1) + blk(G, 1, 0) == P["10"],
            blk(G, 0, 2) + blk(G, 2, 0) == P["01"], blk(G, 1, 2) + blk(G, 2, 1) == P["11"]]
    cp.Problem(cp.Minimize(t), cons).solve(solver=cp.CLARABEL)
    out["kChoiPencilFactorThreshold"] = t.value
    Y = cp.Variable((9, 9), hermitian=True)
    s = cp.Variable()
    cons = [Y - s * np.eye(9) >> 0]
    for a in range(3):
        cons.append(blk(Y, a, a) == blk(sym, a, a))
        for b in range(a + 1, 3):
            cons.append(blk(Y, a, b) + blk(Y, b, a) == 2 * blk(sym, a, b))
    cp.Problem(cp.Maximize(s), cons).solve(solver=cp.CLARABEL)
    out["kChoiSkewAwareMargin"] = -s.value

    lines = LICENSE_HEADER + ["// Generated by tests/oracles/compute_fixtures.py; do not edit.",
             "#pragma once", "", "namespace plift::fixtures {", ""]
    for k, v in out.items():
        lines.append(f"inline constexpr double {k} = {float(v)!r};")
    lines += ["", "}  // namespace plift::fixtures", ""]
    path = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "oracle_fixtures.hpp"
    path.write_text("\n".join(lines))
    for k, v in out.items():
        print(f"{k} = {float(v)!r}")


if __name__ == "__main__":
    main()
