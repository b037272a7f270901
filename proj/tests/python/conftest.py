import os
import sys

import pytest


@pytest.fixture(scope="session")
def core():
    try:
        from bochvar import _core  # installed package

        return _core
    except ImportError:
        pass
    module_dir = os.environ.get("BOCHVAR_MODULE_DIR")
    if module_dir and module_dir not in sys.path:
        sys.path.insert(0, module_dir)
    import _core

    return _core
