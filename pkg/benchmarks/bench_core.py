"""Compare the compiled and pure-Python signed-permutation kernels.

    python benchmarks/bench_core.py [--rank 6] [--repeat 3]
"""

import argparse
import random
import timeit

from perlab import _core_py

try:
    from perlab import _core
except ImportError:
    _core = None


def workload(core, elems, pairs, vecs):
    for a, b in pairs:
        core.compose(a, b)
        core.length(a)
        core.inverse(b)
    for a in elems:
        core.is_involution(a)
    for a, v in vecs:
        core.act(a, v)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--rank", type=int, default=6)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()

    rng = random.Random(0)
    elems = _core_py.enumerate_all(args.rank)
    pairs = [(rng.choice(elems), rng.choice(elems)) for _ in range(20000)]
    vecs = [(rng.choice(elems), tuple(rng.randint(-9, 9) for _ in range(args.rank))) for _ in range(20000)]

    backends = [("python", _core_py)]
    if _core is not None:
        backends.append(("cython", _core))
    else:
        print("compiled kernel not built; timing the fallback only")

    print(f"rank {args.rank}: {len(elems)} Weyl group elements")
    results = {}
    for name, core in backends:
        t_enum = min(timeit.repeat(lambda: core.enumerate_all(args.rank), number=1, repeat=args.repeat))
        t_ops = min(timeit.repeat(lambda: workload(core, elems, pairs, vecs), number=1, repeat=args.repeat))
        results[name] = (t_enum, t_ops)
        print(f"{name:>7}  enumerate {t_enum * 1e3:8.1f} ms   mixed ops {t_ops * 1e3:8.1f} ms")
    if len(results) == 2:
        (pe, po), (ce, co) = results["python"], results["cython"]
        print(f"speedup  enumerate x{pe / ce:.1f}   mixed ops x{po / co:.1f}")


if __name__ == "__main__":
    main()
