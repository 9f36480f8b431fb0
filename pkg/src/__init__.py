"""
Toruscope: exact periodic orbits of ergodic toral endomorphisms
"""
