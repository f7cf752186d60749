"""
Radius-ladder sweeps: Frostman value against fractional growth
==============================================================

Each sweep integrates arg f along rays inside a truncated Stolz angle at
radii 1 - 2^-j and reports the largest |D^-gamma arg f| per level.
"""
from diskarg import BoundaryPoint, BoundedFunctionSpec
from diskarg.experiments import (
    divisor_stability_run,
    example1_spec,
    example2_spec,
    gen_power_radial,
    verify_theorem_arg,
    verify_theorem_lnb,
)

one = BoundaryPoint(0.0)


def show(title, rep):
    print(f"-- {title}: verdict {rep.verdict}, Frostman {rep.frostman.value:.4g} {rep.frostman.certificate}")
    print(rep.to_csv())


# %% Zeros along the radius with a finite Frostman sum
show("power sequence, gamma 0.5", verify_theorem_arg(BoundedFunctionSpec(zeros=gen_power_radial(4.0, 10**4)), one, 0.5))

# %% A point mass at the vertex
show("atom, gamma 0.5", verify_theorem_arg(example1_spec(), one, 0.5))

# %% Power density on either side of the threshold
spec = example2_spec(0.5)
show("density t^-1/2, gamma 0.8", verify_theorem_arg(spec, one, 0.8))
show("density t^-1/2, gamma 0.2", verify_theorem_arg(spec, one, 0.2))

# %% The compensated logarithm
show("density t^-1/2, Re and Im of L", verify_theorem_lnb(spec, one, 0.8, h=0.5, grid_angles=17))

# %% Divisors of a Frostman-finite function
reps = divisor_stability_run(
    BoundedFunctionSpec(zeros=gen_power_radial(4.0, 10**4)), one, 0.5, splits=4, levels=range(4, 25), grid_angles=9
)
print("divisor verdicts on j = 4..24:", [r.verdict for r in reps])
