"""
Install threshold-am with its `threshold-am` console script.
"""
from __future__ import annotations

import os
import re
import subprocess
from pathlib import Path

from setuptools import setup

ROOT = Path(__file__).resolve().parent.parent
os.chdir(ROOT)  # paths below are relative to the repository root

def _git_ver():
    # nearest tag only; untagged trees and non-numeric tags fall back to 0.0.0
    try:
        tag = subprocess.check_output(
            ["git", "describe", "--tags", "--abbrev=0"], cwd=ROOT, stderr=subprocess.DEVNULL
        ).decode().strip()
    except Exception:  # noqa: BLE001
        return "0.0.0"
    tag = tag[1:] if tag.startswith("v") else tag
    return tag if re.fullmatch(r"\d+(\.\d+)*", tag) else "0.0.0"

def _requirements():
    lines = (ROOT / "requirements.txt").read_text().splitlines()
    reqs = [ln.split("#")[0].strip() for ln in lines]
    return [r for r in reqs if r and not r.startswith(("pytest", "hypothesis"))]

PACKAGES = ["threshold", "logic", "dynamics", "actions", "belief", "automata"]
MODULES = ["main", "settings", "storage", "export"]

setup(
    name="threshold-am",
    version=_git_ver(),
    packages=PACKAGES,
    py_modules=MODULES,
    package_data={"automata": ["*.json"]},
    install_requires=_requirements(),
    extras_require={"test": ["pytest==8.1.1", "hypothesis==6.100.1"]},
    entry_points={"console_scripts": ["threshold-am=main:main"]},
    python_requires=">=3.9",
)
