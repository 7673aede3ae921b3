"""Talbot experiment on the 2-sphere: Besov-decay random data at random times."""
import argparse

from symharm import io as sio
from symharm.schrodinger import DataSpec, TimeSpec, talbot_experiment
from symharm.spaces import space_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--space", default="sphere")
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--M", type=int, default=1024)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    p = space_params(args.space, args.d)
    times = [TimeSpec("random", seed=k) for k in range(args.count)]
    rep = talbot_experiment(p, DataSpec("besov_random", 0.5, float("inf"), seed=7), times, args.M)
    for row in rep["times"]:
        print(f"{row['t_spec']['label']:<10} t={row['t_spec']['t']:.4f} besov {row['besov_exponent']:.3f} "
              f"holder {row['holder_exponent']:.3f} dim {row['dimension']['dimension']:.3f} "
              f"converged {row['converged']}")
    print(rep["aggregates"])
    if args.out:
        with sio.atomic_output(args.out) as fh:
            fh.write(sio.to_json(rep))


if __name__ == "__main__":
    main()
