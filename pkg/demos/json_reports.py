"""
Reports that check themselves
=============================

Every CLI command can emit a versioned JSON report. All rationals are
stored as ``p/q`` strings, so ``monogap --verify`` can redo the exact
computation from the recorded inputs and compare.
"""

# %%
import contextlib
import io
import json
import tempfile

from monogap.cli import main


def run(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


code, out = run("--json", "gaps", "--preset", "paper-n3", "--nmax", "4")
report = json.loads(out)
print("exit code", code)
for rec in report["results"]["per_n"]:
    print(rec["n"], rec["status"], rec["alpha"])

# %%
# Save the report and verify it, then tamper with the certified alpha and
# watch verification fail.
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    json.dump(report, fh)
print(run("--verify", fh.name))

report["results"]["per_n"][2]["certificate"]["alpha"] = "1"
with open(fh.name, "w") as out_fh:
    json.dump(report, out_fh)
print(run("--verify", fh.name))
