"""Python access to the ugkit ultragraph toolkit."""

import json

from ._ugkit import REPORT_SCHEMA, Ultragraph, UgkitError, run

__all__ = ["REPORT_SCHEMA", "Ultragraph", "UgkitError", "run", "report"]


def report(*args):
    """Run a command with --json and return the decoded report."""
    code, out, _ = run(["--json", *args])
    data = json.loads(out)
    assert data["exit_code"] == code
    return data
