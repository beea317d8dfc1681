import importlib
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


def _backends():
    mods = [importlib.import_module("partlat._kernels_py")]
    try:
        mods.append(importlib.import_module("partlat._kernels"))
    except ImportError:
        pass
    return mods


@pytest.fixture(params=_backends(), ids=lambda m: m.BACKEND)
def backend(request):
    return request.param
