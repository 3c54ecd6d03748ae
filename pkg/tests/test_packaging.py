import ast
import re
import subprocess
from pathlib import Path

import pytest

SETUP = Path(__file__).resolve().parent.parent / "packaging" / "setup.py"


def _load_git_ver(check_output):
    # compile only the version helper; running setup.py would invoke setup()
    tree = ast.parse(SETUP.read_text(encoding="utf-8"))
    func = next(n for n in tree.body if isinstance(n, ast.FunctionDef) and n.name == "_git_ver")
    fake = type("subprocess", (), {"check_output": staticmethod(check_output), "DEVNULL": subprocess.DEVNULL})
    namespace = {"subprocess": fake, "re": re, "ROOT": SETUP.parent.parent}
    exec(compile(ast.Module(body=[func], type_ignores=[]), str(SETUP), "exec"), namespace)
    return namespace["_git_ver"]


@pytest.mark.parametrize(
    "tag, expected",
    [(b"v1.2.0\n", "1.2.0"), (b"3\n", "3"), (b"release-candidate\n", "0.0.0"), (b"4f2a9c1\n", "0.0.0")],
)
def test_version_from_tag(tag, expected):
    assert _load_git_ver(lambda *a, **k: tag)() == expected


def test_untagged_tree_falls_back():
    def no_tags(*args, **kwargs):
        raise subprocess.CalledProcessError(128, args[0])

    assert _load_git_ver(no_tags)() == "0.0.0"
