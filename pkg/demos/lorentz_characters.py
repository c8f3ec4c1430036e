"""Boosting a bound-state character (E, p, U) between frames."""
from kgbound.lorentz import (
    BoostSpec,
    CharacterState,
    boost_backward,
    boost_event,
    boost_forward,
    compose_boosts,
    invariant_mass_sq,
)


def show(tag: str, s: CharacterState) -> None:
    print(f"  {tag}: E = {s.e_total:+.4f}, p = ({s.p[0]:+.4f}, "
          f"{s.p[1]:+.4f}, {s.p[2]:+.4f}), U = {s.u_potential:+.4f}, "
          f"E - U = {s.shifted_energy:+.4f}")


def main() -> None:
    # textbook numbers: shifted energy 1.1, momentum 0.3 along x, boost 0.6
    s = CharacterState(e_total=1.3, p=(0.3, 0.0, 0.0), u_potential=0.2)
    b = BoostSpec(v=0.6)

    print(f"Boost with beta = {b.beta}, gamma = {b.gamma}\n")
    show("frame K      ", s)

    # the potential is a field value; the moving frame sees its own U'
    s_prime = boost_forward(s, b, u_prime=0.05)
    show("frame K'     ", s_prime)
    print(f"  px' = gamma (px - beta (E - U)) = 1.25 (0.3 - 0.66) = {s_prime.p[0]:+.4f}")

    back = boost_backward(s_prime, b, u=s.u_potential)
    show("back in K    ", back)

    inv_k = invariant_mass_sq(s)
    inv_kp = invariant_mass_sq(s_prime)
    print(f"\n  (E - U)^2 - p^2 c^2: {inv_k:.10f} in K, {inv_kp:.10f} in K'")
    print("  the shifted energy and the momentum form the four-vector;")
    print("  the raw E does not, because U soaks up part of the energy\n")

    # a free particle's plane-wave phase is frame-independent
    m = 1.0
    free = CharacterState(e_total=(m ** 2 + 0.3 ** 2) ** 0.5, p=(0.3, 0.0, 0.0))
    t, r = 2.0, (0.7, -0.4, 0.1)
    t_p, r_p = boost_event(t, r, b)
    phase = free.e_total * t - sum(pi * ri for pi, ri in zip(free.p, r))
    free_p = boost_forward(free, b)
    phase_p = free_p.e_total * t_p - sum(pi * ri for pi, ri in zip(free_p.p, r_p))
    print(f"  phase E t - p.r: {phase:.15f} in K, {phase_p:.15f} in K'")
    print(f"  difference {abs(phase - phase_p):.1e}: counting wave crests is")
    print("  not a matter of opinion between observers\n")

    both = compose_boosts(b, BoostSpec(v=0.5))
    print(f"  composing 0.6c then 0.5c gives {both.v:.6f}c, not 1.1c;")
    print("  velocities add through (v1 + v2)/(1 + v1 v2 / c^2)")


if __name__ == "__main__":
    main()
