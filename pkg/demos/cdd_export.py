"""Write the n=4 cone in cdd text, read it back and cross-check the pair.

The .ine/.ext files can be handed to cdd or lrs for an independent check.
"""

import os
import tempfile

from monocone import cddio, dd_convert, monotonicity_cone, verify_dd_pair

h = monotonicity_cone("all", 4)
v = dd_convert(h)

out = tempfile.mkdtemp(prefix="monocone-")
ine, ext = os.path.join(out, "m4.ine"), os.path.join(out, "m4.ext")
with open(ine, "w") as fh:
    fh.write(cddio.format_hrep(h))
with open(ext, "w") as fh:
    fh.write(cddio.format_vrep(v))
print("wrote", ine, "and", ext)

report = verify_dd_pair(cddio.read(ine), cddio.read(ext))
print("\n".join(report.lines()))
print(open(ext).read().splitlines()[:8])
