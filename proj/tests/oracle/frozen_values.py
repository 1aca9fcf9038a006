"""Independent oracle for the frozen expected values in the C++ tests.

Thermal states come from scipy's matrix exponential of the 4x4 Hamiltonian,
entanglement from numpy eigenvalues of the partial transpose, and the
teleportation average from adaptive 2D quadrature. Nothing here shares code
with the library.

    python3 tests/oracle/frozen_values.py
"""
import numpy as np
from scipy import integrate, linalg, optimize

S = 1 / np.sqrt(2)
BELL = {
    "PhiPlus": np.array([S, 0, 0, S]),
    "PhiMinus": np.array([S, 0, 0, -S]),
    "PsiPlus": np.array([0, S, S, 0]),
    "PsiMinus": np.array([0, S, -S, 0]),
}
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)


def hamiltonian(u, v):
    return np.array([[u, 0, 0, 3 * v], [0, -u, -u, 0], [0, -u, -u, 0], [3 * v, 0, 0, u]]) / 6.0


def thermal(u, v):
    e = linalg.expm(-hamiltonian(u, v))
    return e / np.trace(e)


def weights(u, v):
    r = thermal(u, v)
    return {k: float(b @ r @ b) for k, b in BELL.items()}


def partial_transpose(r):
    return r.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)


def negativity(r):
    ev = np.linalg.eigvalsh(partial_transpose(r))
    return (np.abs(ev).sum() - 1) / 2


def chsh(r):
    c = np.array([[np.trace(r @ np.kron(a, b)).real for b in (X, Y, Z)] for a in (X, Y, Z)])
    u = np.sort(np.linalg.eigvalsh(c.T @ c))
    return 2 * np.sqrt(u[1] + u[2]), np.diag(c)


def teleported(r, k0, theta, phi):
    psi = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    rin = np.outer(psi, psi.conj())
    k = np.outer(BELL[k0], BELL[k0])
    out = np.zeros((2, 2), dtype=complex)
    for s in (I2, X, Y, Z):
        rot = np.kron(s, I2)
        q = np.trace(rot @ k @ rot @ r).real
        out += q * s @ rin @ s
    return psi, out


def average_fidelity(r, k0):
    def f(theta, phi):
        psi, out = teleported(r, k0, theta, phi)
        return (psi.conj() @ out @ psi).real * np.sin(theta)

    val, _ = integrate.dblquad(f, 0, 2 * np.pi, 0, np.pi, epsabs=1e-13, epsrel=1e-13)
    return val / (4 * np.pi)


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    for u, v in [(3, 1), (-6, 0), (-10, 10), (-10, -10), (30, 0)]:
        r = thermal(u, v)
        print(f"({u},{v}) weights", {k: repr(x) for k, x in weights(u, v).items()})
        print("  rho11 rho22 rho23 rho14", repr(r[0, 0]), repr(r[1, 1]), repr(r[1, 2]), repr(r[0, 3]))
        b, c = chsh(r)
        print("  negativity", repr(negativity(r)), "chsh", repr(b), "corr", c)
    r = thermal(3, 1)
    print("F(3,1,PsiPlus) quadrature", repr(average_fidelity(r, "PsiPlus")))
    psi, out = teleported(r, "PsiPlus", np.pi / 2, 0)
    print("bloch x at (pi/2,0)", repr(np.trace(out @ X).real), "f", repr((psi.conj() @ out @ psi).real))
    p = np.outer(BELL["PsiPlus"], BELL["PsiPlus"])
    print("PT(PsiPlus) eigenvalues", np.linalg.eigvalsh(partial_transpose(p)))
    print("gibbs(H(3,1))[0,0]", repr(thermal(3, 1)[0, 0]))
    root = optimize.brentq(lambda u: max(weights(u, 1.0).values()) - 0.5, 2, 3, xtol=1e-15)
    print("negativity root on v=1:", repr(root), "maxp at u=2", max(weights(2, 1).values()))
