"""Helical vectors: the orthonormal triad attached to every wavevector."""
import numpy as np

from helwave import helical_vector, spherical_triad

# Off the pole the triad follows the usual spherical angles of k
k = (1, 2, 2)
t = spherical_triad(k)
print("e_r     ", t.e_r)
print("e_theta ", t.e_theta)
print("e_phi   ", t.e_phi)

# h+ and h- are eigenvectors of i k x (.) with eigenvalues +|k| and -|k|
kv = np.array(k, dtype=float)
for s in "+-":
    h = helical_vector(k, s).value
    print(s, "i k x h / |k| =", np.round(1j * np.cross(kv, h) / np.linalg.norm(kv), 12))
    print("   h            =", np.round(h, 12))

# Reversing k conjugates every helical vector
print("h+(-k) == conj h+(k):", np.allclose(helical_vector((-1, -2, -2), "+").value, helical_vector(k, "+").value.conj()))
