"""Per-network comparison of 2D and 3D embeddings of the same nPSO graphs.

Prints one row per seed and the fraction of networks where 3D separates better.
"""

import argparse

from asi.experiments import embed_network, score
from asi.npso import NpsoParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--temperature", type=float, default=0.7)
    ap.add_argument("--nodes", type=int, default=100)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--communities", type=int, default=5)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--method", default="ra1-le", choices=["ra1-le", "ra2-le"])
    ap.add_argument("--reshuffles", type=int, default=1000)
    args = ap.parse_args()

    better = 0
    print("seed  asi_2d  p_2d    asi_3d  p_3d")
    for seed in range(args.seeds):
        params = NpsoParams(args.nodes, args.m, args.temperature, 3.0, args.communities, seed)
        en = score(embed_network(params, args.method), args.reshuffles, seed)
        r2, r3 = en.reports[2], en.reports[3]
        better += r3.asi > r2.asi
        print(f"{seed:4d}  {r2.asi:.3f}   {r2.p_value:.4f}  {r3.asi:.3f}   {r3.p_value:.4f}")
    print(f"3D above 2D on {better}/{args.seeds} networks")


if __name__ == "__main__":
    main()
