# %% [markdown]
# # The command line and local OEIS b-files

# %%
import json

from errsums.cli import run
from errsums.suites import DEFAULT_DATA_DIR

# %%
doc = json.loads(run(["compute", "zeta2", "--mode", "signed", "--prec", "256", "--format", "json"]))
print(doc["results"][0]["value"])

# %%
print(run(["compute", "log1p", "--t", "1/2", "--prec", "128", "--tol", "1e-30"]))
print(run(["triangle", "b", "--rows", "3"]))

# %%
print(run(["verify", "genfuncs", "--max-n", "20"]))

# %%
# the fixtures in data/ are generated locally, not downloaded
for oeis_id in ("A001850", "A005259", "A108626"):
    path = DEFAULT_DATA_DIR / f"{oeis_id}.fixture.txt"
    print(run(["oeis", "--id", oeis_id, "--bfile", str(path)]).strip())
