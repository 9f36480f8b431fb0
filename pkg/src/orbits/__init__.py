"""
Periodic orbit constructions
"""

from orbits.torus import (OrbitRecord, TorusPoint, certify_period, min_gap, orbit_bruteforce,
                          pull_back_orbit, torus_dist_sq)
from orbits.irreducible import (certify_distance_bound, construct_irreducible, eigen_point,
                                wedge_invariant)
from orbits.prime_power import construct_prime_power
from orbits.general import construct_general, uniform_sequence
