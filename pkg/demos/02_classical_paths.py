"""
Classical Euclidean paths in the inverted well
==============================================

A path of imaginary-time length Theta starts and ends at q0 and turns
around at q_t.  Every quantity below is parameterized by (q_t, Theta).
"""

import numpy as np

from semiclassical import classical as C

theta = 3.0
q_t = 0.3
path = C.solve_path(q_t, theta)
print(f"q_t={q_t}, Theta={theta}: k={path.modulus.k:.12f} q0={path.q0:.10f} I={path.action:.10f}")

# the path is symmetric about Theta/2 and turns at q_t
for th in np.linspace(0, theta, 7):
    print(f"  theta={th:4.2f}  q={path.point(th):.8f}  dq/dtheta={path.velocity(th):+.8f}")

# there is a largest turning point: beyond q_plus the endpoint runs off to infinity
for big in (0.1, 1.0, 5.0, 20.0):
    print(f"q_plus({big}) = {C.q_plus(big):.6e}")

# the endpoint map inverts cleanly
q0 = C.endpoint_from_turning(q_t, theta)
print("round trip q_t:", C.turning_from_endpoint(q0, theta), "vs", q_t)

# closed form action against direct quadrature of the Euclidean Lagrangian
print("closed form action:", C.classical_action(q_t, theta))
print("quadrature action :", C.action_from_endpoints(q0, q_t, theta))
