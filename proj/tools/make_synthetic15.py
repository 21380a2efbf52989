"""Writes a synthetic 15-body heliocentric-like system in AU/day with the Gaussian G.

Planets and asteroids start on slightly eccentric, slightly inclined Kepler
orbits around the Sun; the result is shifted to the barycenter.
"""
import json
import math
import random
import sys

K2 = 0.01720209895 ** 2

# name, mass in solar masses, a [AU], e, i [deg]
BODIES = [
    ("Mercury", 1.660e-7, 0.387, 0.206, 7.0),
    ("Venus", 2.448e-6, 0.723, 0.007, 3.4),
    ("EarthMoon", 3.040e-6, 1.000, 0.017, 0.0),
    ("Mars", 3.227e-7, 1.524, 0.093, 1.9),
    ("Jupiter", 9.548e-4, 5.203, 0.048, 1.3),
    ("Saturn", 2.859e-4, 9.537, 0.054, 2.5),
    ("Uranus", 4.366e-5, 19.19, 0.047, 0.8),
    ("Neptune", 5.151e-5, 30.07, 0.009, 1.8),
    ("Pluto", 6.6e-9, 39.48, 0.249, 17.1),
    ("Ceres", 4.7e-10, 2.767, 0.076, 10.6),
    ("Pallas", 1.0e-10, 2.772, 0.231, 34.8),
    ("Vesta", 1.3e-10, 2.362, 0.089, 7.1),
    ("Iris", 6.8e-12, 2.386, 0.231, 5.5),
    ("Bamberga", 5.2e-12, 2.684, 0.338, 11.1),
]


def state(mu, a, e, inc, node, argp, M):
    E = M
    for _ in range(100):
        E -= (E - e * math.sin(E) - M) / (1 - e * math.cos(E))
    n = math.sqrt(mu / a**3)
    b = a * math.sqrt(1 - e * e)
    x, y = a * (math.cos(E) - e), b * math.sin(E)
    d = 1 - e * math.cos(E)
    vx, vy = -a * n * math.sin(E) / d, b * n * math.cos(E) / d

    def rot(px, py):
        cw, sw = math.cos(argp), math.sin(argp)
        x1, y1 = cw * px - sw * py, sw * px + cw * py
        ci, si = math.cos(inc), math.sin(inc)
        y2, z2 = ci * y1, si * y1
        cn, sn = math.cos(node), math.sin(node)
        return [cn * x1 - sn * y2, sn * x1 + cn * y2, z2]

    return rot(x, y), rot(vx, vy)


def main(path):
    rng = random.Random(15)
    bodies = [{"name": "Sun", "gm": K2, "q": [0.0, 0.0, 0.0], "v": [0.0, 0.0, 0.0]}]
    for name, m, a, e, i in BODIES:
        q, v = state(K2 * (1 + m), a, e, math.radians(i), rng.uniform(0, 2 * math.pi),
                     rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        bodies.append({"name": name, "gm": K2 * m, "q": q, "v": v})
    total = sum(b["gm"] for b in bodies)
    for key in ("q", "v"):
        c = [sum(b["gm"] * b[key][k] for b in bodies) / total for k in range(3)]
        for b in bodies:
            b[key] = [b[key][k] - c[k] for k in range(3)]
    doc = {
        "unit_system": {"length": "AU", "time": "day", "mass": "solar mass", "G": K2},
        "bodies": bodies,
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "synthetic15.json")
