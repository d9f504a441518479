from pathlib import Path

import pytest

PACKAGE_DIR = Path(__file__).resolve().parents[1] / "cohomology_engine"


@pytest.mark.parametrize("path", sorted(PACKAGE_DIR.rglob("*.py")), ids=lambda p: str(p.relative_to(PACKAGE_DIR)))
def test_sources_carry_license_header(path):
    head = path.read_text(encoding="utf-8").splitlines()[:3]
    assert head[0].startswith("# Copyright (2025) Bytedance Ltd.")
    assert head[2] == '# Licensed under the Apache License, Version 2.0 (the "License");'
