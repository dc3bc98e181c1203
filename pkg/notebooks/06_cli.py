# %% [markdown]
# # The command line
#
# Every command prints JSON (or text with --format text) and signals the
# outcome through its exit code.

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import pnmetric as pn
from pnmetric.io import space_to_dict

tmp = Path(tempfile.mkdtemp())
space = tmp / "g.json"
space.write_text(json.dumps(space_to_dict(pn.two_point_five_metric())))
(tmp / "f.json").write_text(json.dumps({"map": {"a": "b", "b": "b"}}))


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "pnmetric", *args], capture_output=True, text=True)
    print("exit", proc.returncode)
    print(proc.stdout[:600])


# %%
run("validate", str(space))

# %%
run("analyze", str(space), "topology")

# %%
run("solve", "--space", str(space), "--map", str(tmp / "f.json"), "--start", "a")
