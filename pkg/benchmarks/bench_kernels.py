"""Compare the compiled and pure-Python composition-table kernels.

Each case builds a table, checks associativity, computes mono/epi flags,
closes an ideal and enumerates short exact sequences at every object.  Both
backends must return identical results; the script exits 1 otherwise.

    python benchmarks/bench_kernels.py --repeat 3
"""
import argparse
import json
import sys
import timeit

from pretor.fincat import product
from pretor.generators import gen_finset, gen_finset_op, gen_rel, gen_signed_sets
from pretor.kernels import available_backends


def cases():
    return {
        "finset3": gen_finset(3),
        "finset_op3": gen_finset_op(3),
        "rel2": gen_rel(2),
        "signed2": gen_signed_sets(2).cat,
        "finset2^2": product([gen_finset(2), gen_finset(2)])[0],
        "rel2xfinset2": product([gen_rel(2), gen_finset(2)])[0],
    }


def workload(cls, cat):
    mi = cat.mor_index
    entries = [(mi[g], mi[f], mi[gf]) for (g, f), gf in cat.composition.items()]
    t = cls(len(cat.objects), cat.src_idx, cat.dst_idx, cat.ident_idx, entries)
    zmask = bytes([1] + [0] * (len(cat.objects) - 1))
    null = t.generated_ideal(zmask)
    everything = bytes([1] * len(cat.objects))
    seqs = [t.ses_pairs(null, x, everything, everything, False) for x in range(len(cat.objects))]
    return (t.missing(), t.assoc_violation(), bytes(t.mono_flags()), bytes(t.epi_flags()),
            bytes(null), t.closure_violation(null), seqs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions; the minimum is reported")
    ap.add_argument("--case", action="append", help="restrict to named cases")
    ap.add_argument("--json", action="store_true", help="emit results as JSON")
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the Python backend is available", file=sys.stderr)
    rows, mismatches = [], []
    for name, cat in cases().items():
        if args.case and name not in args.case:
            continue
        results, times = {}, {}
        for bname, cls in backends.items():
            results[bname] = workload(cls, cat)
            times[bname] = min(timeit.repeat(lambda: workload(cls, cat), number=1, repeat=args.repeat))
        if len({repr(r) for r in results.values()}) != 1:
            mismatches.append(name)
        row = {"case": name, "morphisms": len(cat.morphisms), **{f"{b}_s": round(s, 6) for b, s in times.items()}}
        if "cython" in times:
            row["speedup"] = round(times["python"] / times["cython"], 1)
        rows.append(row)

    if args.json:
        print(json.dumps({"rows": rows, "mismatches": mismatches}, indent=2))
    else:
        print(f"{'case':<14}{'mor':>6}{'python s':>12}{'cython s':>12}{'speedup':>9}")
        for r in rows:
            print(f"{r['case']:<14}{r['morphisms']:>6}{r['python_s']:>12.4f}"
                  f"{r.get('cython_s', float('nan')):>12.4f}{r.get('speedup', float('nan')):>9.1f}")
        if mismatches:
            print("backend mismatch: " + ", ".join(mismatches))
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
