"""Normality of X_Sigma in B3 and G2, from condition (star) to explicit tensor chains.

    python3 demos/normality_walkthrough.py
"""
from xsigma import compact, orderchain, repthy
from xsigma.rootsys import build_root_system


def show_chain(rs, sigma, mu):
    cert = compact.normality_certificate(rs, sigma, mu)
    ok = compact.verify_certificate(rs, sigma, cert)
    factors = " x ".join(f"V{f}" for f in cert.factors)
    print(f"  mu={mu}: V{cert.target} in {factors}  oracle={'yes' if ok else 'NO'}")


def main():
    rs = build_root_system("B3")
    lam = (1, 0, 0)
    print(f"B3, lambda={lam}: (star) holds? {compact.satisfies_star(rs, lam)}")
    (lb,) = compact.little_brothers(rs, lam)
    print(f"little brother: {lb}")

    # without the little brother no chain reaches mu = lb
    hit = compact.normality_oracle(rs, compact.make_sigma(rs, [lam]), 4, [lb])[lb]
    print(f"chain for mu={lb} with Sigma={{lam}} and n <= 4: {hit}")

    sigma = compact.make_sigma(rs, [lam, lb])
    print(f"with Sigma={sigma.sorted()}: normal? {compact.normality_decide(rs, sigma)}")
    for mu in orderchain.dominant_ideal(rs, lam):
        show_chain(rs, sigma, mu)

    rs = build_root_system("G2")
    lam = (0, 2)
    lbs = compact.little_brothers(rs, lam)
    sigma = compact.make_sigma(rs, {lam} | lbs)
    print(f"\nG2, lambda={lam}: little brothers {sorted(lbs)}")
    for mu in orderchain.dominant_ideal(rs, lam):
        show_chain(rs, sigma, mu)

    print("\nthe step lemma behind one link, G2:")
    step = orderchain.induction_step(rs, (0, 1), (0, 0))
    print(f"  {step.rule}: V{step.mu_next} x V{step.lam_next} contains V(0,1)? "
          f"{repthy.tensor_contains(rs, step.mu_next, step.lam_next, (0, 1))}")


if __name__ == "__main__":
    main()
