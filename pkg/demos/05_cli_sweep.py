"""Drive the command line from Python: solve, verify, then sweep c0."""

import io
import json
import pathlib
import tempfile
from contextlib import redirect_stdout

from ellipwave import cli

config = """
# unit-coefficient Fokas-Lenells set
a1 = 1
a2 = 0
b = 1
sigma = 0
alpha = 0
lambda = 0
mu = 0
kappa = 1
omega = 1
c0 = 1.5
"""

with tempfile.TemporaryDirectory() as tmp:
    path = pathlib.Path(tmp) / "fl.cfg"
    path.write_text(config)

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(["verify", "--equation", "fl", "--config", str(path), "--format", "json"])
    doc = json.loads(buf.getvalue())
    print("verify exit code:", code)
    for row in doc["rows"]:
        print(f"  {row['oracle']:<20} {row['max_abs']:.3e}  passed={row['passed']}")

    # p^2 climbs from 1 (pulse) as c0 approaches the repeated-root value 2
    buf = io.StringIO()
    with redirect_stdout(buf):
        cli.main(["sweep", "--equation", "fl", "--config", str(path), "--param", "c0",
                  "--from", "0", "--to", "2.5", "--count", "6"])
    print(buf.getvalue())
