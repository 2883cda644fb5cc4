import os
import subprocess
import sys
from pathlib import Path

import pytest

PKG_ROOT = Path(__file__).resolve().parent.parent
SRC_DIR = PKG_ROOT / "src"


@pytest.fixture(scope="session")
def cli_env():
    env = dict(os.environ)
    env.pop("ARCTN_MAX_EVALS", None)
    env["PYTHONPATH"] = str(SRC_DIR) + os.pathsep + env.get("PYTHONPATH", "")
    return env


@pytest.fixture(scope="session")
def run_cli(cli_env):
    def run(args, env_extra=None, timeout=120):
        env = dict(cli_env)
        if env_extra:
            env.update(env_extra)
        return subprocess.run(
            [sys.executable, "-m", "arctn", *args],
            capture_output=True,
            text=True,
            env=env,
            timeout=timeout,
            check=False,
        )

    return run
