"""HOM interference between the converted idler and the delayed signal.

The dip sits at tau_T = -tau0, so its position reads out the path delay.
Its depth is set by how well the converted idler frequency lands on the
signal frequency: only Omega - Delta matters for a flat channel.
"""

import math

import numpy as np

from biphoton_convert.conversion import flat_channel
from biphoton_convert.hom import OMEGA, default_hom_scan, hom_fwhm, hom_grid, hom_trace, visibility_sweep
from biphoton_convert.spectral_core import GaussianSourceParams, gaussian_jsa, thz_to_rad_per_ps

params = GaussianSourceParams(
    thz_to_rad_per_ps(400.0), thz_to_rad_per_ps(0.1), thz_to_rad_per_ps(2.0), thz_to_rad_per_ps(1.0), tau0=0.2
)
channel = flat_channel(1.0, thz_to_rad_per_ps(1.95))
jsa = gaussian_jsa(params, hom_grid(params, channel))
res = hom_trace(jsa, channel, params, default_hom_scan(params, channel))

print(f"visibility    {res.visibility:.6f}   (exp(-0.00125) = {math.exp(-0.00125):.6f})")
print(f"dip position  {res.dip_position:+.5f} ps -> recovered tau0 = {-res.dip_position:.5f} ps")
print(f"dip FWHM      {hom_fwhm(res):.5f} ps")
print(f"baseline      {res.baseline:.6e}   (1/8pi^2 = {1 / (8 * math.pi ** 2):.6e})")

print("\nOmega sweep around Delta (Omega/2pi, visibility, Gaussian prediction):")
omegas = params.delta + np.linspace(-2, 2, 9) * params.sigma_minus
for pt in visibility_sweep(params, flat_channel(), OMEGA, omegas):
    pred = math.exp(-((pt.value - params.delta) ** 2) / (2 * params.sigma_minus ** 2))
    print(f"  {pt.value / (2 * math.pi):6.3f} THz  {pt.visibility:.6f}  {pred:.6f}")
