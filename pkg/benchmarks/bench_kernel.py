"""Compare the compiled and pure-Python flow kernels.

    python benchmarks/bench_kernel.py [--repeat 5]

Times raw max-flow on larger random digraphs and the end-to-end build
order on random flames, once per backend.
"""
import argparse
import random
import time

from flamekit import kernel
from flamekit._nets import plain_net
from flamekit.construction import build_order, extract_minimal_preserver
from flamekit.digraph import random_digraph


def maxflow_workload(graphs):
    total = 0
    for g in graphs:
        net = plain_net(g.full())
        s = g.vindex[g.root]
        for v in g.non_root:
            total += net.max_flow(net.new_flow(), s, g.vindex[v])
    return total


def build_workload(flames):
    return sum(len(build_order(F.as_graph()).order) for F in flames)


def best_of(fn, arg, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(arg)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    big = [random_digraph(60, 600, seed) for seed in range(10)]
    rng = random.Random(0)
    flames = []
    for seed in range(40):
        n = rng.randint(6, 12)
        flames.append(extract_minimal_preserver(random_digraph(n, 30, seed)))

    backends = ["python"]
    try:
        kernel.use_backend("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernel not built; timing the Python kernel only")

    rows = {}
    for name in backends:
        kernel.use_backend(name)
        rows[name] = (best_of(maxflow_workload, big, args.repeat), best_of(build_workload, flames, args.repeat))

    print(f"{'workload':<28}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for i, label in enumerate(["max flow (10 x 60v/600e)", "build order (40 flames)"]):
        times = [rows[b][i][0] for b in backends]
        answers = {rows[b][i][1] for b in backends}
        assert len(answers) == 1, "backends disagree"
        line = f"{label:<28}" + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) > 1:
            line += f"{times[0] / times[1]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
