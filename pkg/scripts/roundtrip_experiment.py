"""Random Delzant round trips and reslices, with a short timing summary."""

import argparse
import random
import time
from collections import Counter
from fractions import Fraction

from toric_contact.construct import from_grassmann_data, from_labelled_polytope, roundtrip_check
from toric_contact.grassmann import reslice, square_model
from toric_contact.models import input_polytope, random_delzant_instance, random_grassmann


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-ell", type=int, default=2)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    start = time.perf_counter()
    shapes, failures = Counter(), 0
    for _ in range(args.trials):
        inst = random_delzant_instance(rng, max_m=args.max_m, max_ell=args.max_ell, max_facets=7)
        r = from_labelled_polytope(inst.polytope, inst.L_map, inst.epsilon)
        shapes[(r.m, r.ell)] += 1
        failures += not roundtrip_check(r, inst.polytope).ok
    print(f"polytope pipeline: {args.trials} trials, {failures} failures, {time.perf_counter() - start:.2f}s")
    for (m, ell), count in sorted(shapes.items()):
        print(f"  m={m} ell={ell}: {count}")

    start = time.perf_counter()
    failures = 0
    for _ in range(args.trials // 4):
        P = random_grassmann(rng, max_m=args.max_m)
        failures += not roundtrip_check(from_grassmann_data(P), input_polytope(P)).ok
    print(f"presentation pipeline: {args.trials // 4} trials, {failures} failures, {time.perf_counter() - start:.2f}s")

    _, _, square = square_model()
    iso = 0
    for _ in range(args.trials // 4):
        lam = tuple(Fraction(rng.randint(1, 20), rng.randint(1, 7)) for _ in range(2))
        iso += reslice(square, lam).lattice_isomorphic
    print(f"square reslices: {iso}/{args.trials // 4} face lattices isomorphic")


if __name__ == "__main__":
    main()
