"""A finite phase-matching bandwidth beta in the converter.

The converter only passes part of the idler spectrum, which lowers the
HOM visibility and broadens the dip. Where the window is centred matters:
here it sits on the unconverted idler frequency, the convention under
which the analytic visibility formula holds exactly. The script also shows
what happens with the window centred on the converted photon instead.
"""

import math

import numpy as np

from biphoton_convert import closed_forms as cf
from biphoton_convert.conversion import phase_matched_channel
from biphoton_convert.hom import BETA, visibility_sweep
from biphoton_convert.spectral_core import GaussianSourceParams, thz_to_rad_per_ps

sm = thz_to_rad_per_ps(1.0)
params = GaussianSourceParams(thz_to_rad_per_ps(400.0), sm / 10, thz_to_rad_per_ps(2.0), sm, tau0=0.2)
shift = thz_to_rad_per_ps(1.95)

at_idler = phase_matched_channel(params, 1.0, shift, sm, offset=-shift)
on_converted = phase_matched_channel(params, 1.0, shift, sm, offset=0.0)

betas = sm * np.array([0.5, 1.0, 2.0, 5.0, 20.0, 1000.0])
print(" beta/sigma_-   V(window at idler)  closed form   V(window on converted)   FWHM ratio")
flat_width = 2 * math.sqrt(2 * math.log(2)) / sm
for a, b in zip(visibility_sweep(params, at_idler, BETA, betas), visibility_sweep(params, on_converted, BETA, betas)):
    closed = cf.hom_visibility_closed(params, shift, a.value)
    ratio = a.fwhm / flat_width if np.isfinite(a.fwhm) else float("nan")
    print(f"  {a.value / sm:9.1f}      {a.visibility:.6f}         {closed:.6f}       {b.visibility:.6f}"
          f"            {ratio:.4f}")

print("\nAt beta = 2 sigma_minus the visibility is about 0.878, well below 0.96,")
print("and the dip is about 6% wider than in the flat-channel limit.")
