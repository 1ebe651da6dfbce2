# SPDX-License-Identifier: Apache-2.0
#
# Copyright 2026 The rsma-see Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values frozen into the C++ unit tests.

Written from the model equations with numpy/cvxpy only; nothing here calls the
library. Run `python3 tests/oracles/generate.py` to reprint every value.
"""

import math

import cvxpy as cp
import numpy as np

np.set_printoptions(precision=17)

MASK = (1 << 64) - 1


def mix64(x):
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK
    x ^= x >> 31
    return x


def trial_seed(master, i):
    return mix64((master + (i + 1) * 0x9E3779B97F4A7C15) & MASK)


def seeds():
    print("[seeds]")
    for i in range(3):
        print(f"  trial_seed(20260101, {i}) = {trial_seed(20260101, i)}")


# Small hand-sized link set shared by the metric tests (N_t=2, M=3, K=2, J=2).
G_B = np.array([[0.8 + 0.3j, -0.2 + 0.5j],
                [0.1 - 0.7j, 0.6 + 0.2j],
                [-0.4 + 0.1j, 0.3 - 0.9j]])
G_USER = [np.array([0.5 + 0.2j, -0.3 + 0.4j, 0.7 - 0.1j]),
          np.array([-0.6 + 0.1j, 0.2 + 0.2j, 0.1 + 0.8j])]
H_UEHR = [np.array([0.15 - 0.15j, 0.2 + 0.05j, -0.1 + 0.1j]),
          np.array([0.05 + 0.3j, -0.25 - 0.1j, 0.15 + 0.15j])]
H_DIRECT = [np.array([0.1 + 0.05j, -0.05 + 0.15j]),
            np.array([0.02 - 0.1j, 0.12 + 0.08j])]
THETA = np.array([0.3, 2.1, 4.4])
P_C = np.array([0.9 - 0.1j, -1.0 + 1.0j])
P_P = [np.array([0.6 - 0.1j, -0.3 + 0.2j]), np.array([0.2 + 0.4j, 0.5 - 0.3j])]
SIGMA2 = 0.05
ALLOC = np.array([0.6, 0.4])
P0 = 1.0
VARRHO = 1.0


def eh_constants(sat=0.024, b0=150.0, b1=0.014):
    # Omega(x) = sat * (L(x) - L(0)) / (1 - L(0)), L the logistic curve.
    return sat, b0, b1


def omega(x, sat, b0, b1):
    logistic = lambda y: 1.0 / (1.0 + math.exp(-b0 * (y - b1)))
    return sat * (logistic(x) - logistic(0.0)) / (1.0 - logistic(0.0))


def omega_inv(y, sat, b0, b1):
    l0 = 1.0 / (1.0 + math.exp(b0 * b1))
    target = y / sat * (1.0 - l0) + l0
    return b1 - math.log(1.0 / target - 1.0) / b0


def metrics():
    print("[metrics]")
    s = np.exp(1j * THETA)
    # Received amplitude of precoder w at user k / UEHR j, evaluated as a triple product.
    user = lambda k, w: np.conj(G_USER[k]) @ np.diag(s) @ G_B @ w
    eve = lambda j, w: np.conj(H_DIRECT[j]) @ w + np.conj(H_UEHR[j]) @ np.diag(s) @ G_B @ w
    K, J = 2, 2
    gc = [abs(user(k, P_C)) ** 2 / (sum(abs(user(k, P_P[l])) ** 2 for l in range(K)) + SIGMA2) for k in range(K)]
    gp = [abs(user(k, P_P[k])) ** 2 / (sum(abs(user(k, P_P[l])) ** 2 for l in range(K) if l != k) + SIGMA2)
          for k in range(K)]
    gce = [abs(eve(j, P_C)) ** 2 / (sum(abs(eve(j, P_P[l])) ** 2 for l in range(K)) + SIGMA2) for j in range(J)]
    gpe = [[abs(eve(j, P_P[k])) ** 2 / (abs(eve(j, P_C)) ** 2 +
                                         sum(abs(eve(j, P_P[l])) ** 2 for l in range(K) if l != k) + SIGMA2)
            for k in range(K)] for j in range(J)]
    rc = max(0.0, math.log2(1 + min(gc)) - math.log2(1 + max(gce)))
    rp = [max(0.0, math.log2(1 + gp[k]) - math.log2(1 + max(gpe[j][k] for j in range(J)))) for k in range(K)]
    rsec = [ALLOC[k] * rc + rp[k] for k in range(K)]
    power = np.linalg.norm(P_C) ** 2 + sum(np.linalg.norm(p) ** 2 for p in P_P)
    see = min(rsec) / (VARRHO * power + P0)
    peh = [abs(eve(j, P_C)) ** 2 + sum(abs(eve(j, P_P[k])) ** 2 for k in range(K)) for j in range(J)]
    gc, gp, gce = [float(v) for v in gc], [float(v) for v in gp], [float(v) for v in gce]
    gpe = [[float(v) for v in row] for row in gpe]
    peh = [float(v) for v in peh]
    print(f"  gamma_c = {gc[0]!r}, {gc[1]!r}")
    print(f"  gamma_p = {gp[0]!r}, {gp[1]!r}")
    print(f"  gamma_c_eve = {gce[0]!r}, {gce[1]!r}")
    print(f"  gamma_p_eve = {gpe[0][0]!r}, {gpe[0][1]!r}, {gpe[1][0]!r}, {gpe[1][1]!r}")
    print(f"  r_c_sec = {rc!r}  r_p_sec = {rp[0]!r}, {rp[1]!r}")
    print(f"  r_sec_min = {float(min(rsec))!r}  power = {float(power)!r}  see = {float(see)!r}")
    print(f"  p_eh = {peh[0]!r}, {peh[1]!r}")
    # Harvester with input scaled to the logistic knee.
    sat, b0, b1 = eh_constants()
    x = 0.01 * sum(peh)
    print(f"  omega(0.01 * p_eh_sum) = {omega(x, sat, b0, b1)!r}")


def eh():
    print("[eh]")
    sat, b0, b1 = eh_constants()
    print(f"  omega(b1) = {omega(b1, sat, b0, b1)!r}")
    print(f"  omega_inv(0.01) = {omega_inv(0.01, sat, b0, b1)!r}")
    print(f"  omega_inv(sat*(1-1e-6)) = {omega_inv(sat * (1 - 1e-6), sat, b0, b1)!r}")


def taylor():
    print("[taylor]")
    h = np.array([0.4 - 0.2j, 1.1 + 0.3j])
    u0 = np.array([0.5 + 0.5j, -0.2 + 0.1j])
    x0 = 0.7
    u = np.array([0.1 - 0.3j, 0.6 + 0.2j])
    x = 1.3
    # Tangent plane of |h^H u|^2 / x at (u0, x0) via numerical gradient-free closed form.
    q0 = np.vdot(h, u0)
    q = np.vdot(h, u)
    psi = 2 * (np.conj(q0) * q).real / x0 - abs(q0) ** 2 * x / x0 ** 2
    print(f"  psi = {psi!r}  target = {abs(q) ** 2 / x!r}")
    a = np.array([0.3 + 0.9j, -0.7 + 0.2j, 0.1 - 0.4j])
    b0 = np.array([1.0 - 0.5j, 0.2 + 0.3j, -0.6 + 0.1j])
    b = np.array([-0.2 + 0.4j, 0.8 - 0.1j, 0.3 + 0.3j])
    ab0 = np.vdot(a, b0)
    phi = 2 * (np.conj(ab0) * np.vdot(a, b)).real - abs(ab0) ** 2
    print(f"  phi = {phi!r}  target = {abs(np.vdot(a, b)) ** 2!r}")
    c = 0.4 - 0.3j
    t = np.array([0.2 + 0.1j, -0.5 + 0.6j])
    s0 = np.exp(1j * np.array([0.4, 1.9]))
    s = np.exp(1j * np.array([2.5, -0.8]))
    w0 = c + np.vdot(t, s0)
    w = c + np.vdot(t, s)
    vartheta = 2 * (np.conj(w0) * w).real - abs(w0) ** 2
    print(f"  vartheta = {vartheta!r}  target = {abs(w) ** 2!r}")
    print(f"  gamma_lin(-0.4; 1.2) = {2 ** 1.2 * (1 + math.log(2) * (-0.4 - 1.2))!r}")
    xx, yy, xx0, yy0 = 0.9, 2.2, 1.5, 0.4
    print(f"  theta_prod = {(xx0 + yy0) * (xx + yy) / 2 - (xx0 + yy0) ** 2 / 4 - (xx - yy) ** 2 / 4!r}")


def grid_allocation(rc, rp, step=1e-3):
    n = int(round(1 / step))
    best = -math.inf
    arg = None
    if len(rp) == 2:
        for i in range(n + 1):
            a = (i * step, 1 - i * step)
            z = min(a[k] * rc + rp[k] for k in range(2))
            if z > best:
                best, arg = z, a
    else:
        for i in range(n + 1):
            for j in range(n + 1 - i):
                a = (i * step, j * step, 1 - (i + j) * step)
                z = min(a[k] * rc + rp[k] for k in range(3))
                if z > best:
                    best, arg = z, a
    return best, arg


def allocation():
    print("[allocation]")
    z, a = grid_allocation(1.0, [0.2, 0.6])
    print(f"  K=2 (1; 0.2, 0.6): zeta = {z!r}, a = {a}")
    z, a = grid_allocation(0.8, [0.1, 0.5, 0.3])
    print(f"  K=3 (0.8; 0.1, 0.5, 0.3): zeta = {z!r}, a = {a}")


def socp():
    print("[socp]")
    # maximize x0 - 2 x1 + 0.5 x2 over the intersection of two cones and a half-space.
    x = cp.Variable(3)
    cons = [cp.norm(x) <= 2.0,
            cp.norm(cp.hstack([x[0] - 0.5, x[1] + x[2]])) <= 1.5 - 0.2 * x[2],
            x[0] + x[1] + x[2] >= -1.0]
    prob = cp.Problem(cp.Maximize(x[0] - 2 * x[1] + 0.5 * x[2]), cons)
    prob.solve(solver=cp.CLARABEL if "CLARABEL" in cp.installed_solvers() else None)
    print(f"  optimum = {prob.value!r}  x = {x.value}")


def single_element_phase():
    print("[phase M=1]")
    # N_t=2, M=1, K=1, J=1: the common stream shields the private stream at the UEHR.
    e = np.exp(0.7j)
    g_b = np.array([[1.0, 0.0]])
    h_direct = np.array([0.0, e])
    p_c = np.array([10.0, 0.0])
    p_p = np.array([1.0, 1.0])
    sigma2 = 1.0
    grid = np.arange(0.0, 2 * math.pi, 0.01)
    best_eh, best_zeta = None, None
    for th in grid:
        s = np.exp(1j * th)
        eve = lambda w: np.vdot(h_direct, w) + s * (g_b @ w)[0]
        user = lambda w: s * (g_b @ w)[0]
        ehv = abs(eve(p_c)) ** 2 + abs(eve(p_p)) ** 2
        gc = abs(user(p_c)) ** 2 / (abs(user(p_p)) ** 2 + sigma2)
        gp = abs(user(p_p)) ** 2 / sigma2
        gce = abs(eve(p_c)) ** 2 / (abs(eve(p_p)) ** 2 + sigma2)
        gpe = abs(eve(p_p)) ** 2 / (abs(eve(p_c)) ** 2 + sigma2)
        zeta = math.log2(1 + gc) - math.log2(1 + gce) + math.log2(1 + gp) - math.log2(1 + gpe)
        if best_eh is None or ehv > best_eh[1]:
            best_eh = (th, ehv)
        if best_zeta is None or zeta > best_zeta[1]:
            best_zeta = (th, zeta)
    print(f"  EH argmax theta = {best_eh[0]!r} (EH {best_eh[1]!r})")
    print(f"  zeta argmax theta = {best_zeta[0]!r} (zeta {best_zeta[1]!r})")


if __name__ == "__main__":
    seeds()
    metrics()
    eh()
    taylor()
    allocation()
    socp()
    single_element_phase()
