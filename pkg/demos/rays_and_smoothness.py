"""Colored cones, extremal rays, Q-factoriality and smoothness across the supports of D4.

    python3 demos/rays_and_smoothness.py
"""
from xsigma import compact
from xsigma.rootsys import build_root_system


def ray_names(rays):
    return ", ".join(("a%d^v" if r.kind == "coroot" else "-w%d^v") % (r.index + 1) for r in rays)


def main():
    rs = build_root_system("D4")
    print("support        Q-fact (i,ii,iii)   smooth  rays")
    for mask in range(1, 2 ** rs.rank):
        lam = tuple(mask >> i & 1 for i in range(rs.rank))
        q = compact.is_q_factorial(rs, lam)
        rays = compact.extremal_rays(rs, lam)
        generic = compact.generic_rays(rs, lam)
        assert {(r.kind, r.index) for r in rays} == {(r.kind, r.index) for r in generic}
        flags = "".join("TF"[not f] for f in (q.i, q.ii, q.iii))
        print(f"{rs.format_subset(rs.support(lam)):14} {str(q.value):6} {flags:12} "
              f"{str(compact.is_smooth(rs, lam).value):7} {ray_names(rays)}")

    print("\nTimashev's conditions for B2:")
    rs = build_root_system("B2")
    for lam in [(1, 0), (0, 1), (1, 1)]:
        t = compact.timashev_check(rs, lam)
        print(f"  lambda={lam}: i={t.i} ii={t.ii} iii={t.iii}  smooth={compact.is_smooth(rs, lam).value}")


if __name__ == "__main__":
    main()
