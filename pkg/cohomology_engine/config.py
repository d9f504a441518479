# Copyright (2025) Bytedance Ltd. and/or its affiliates

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     https://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Environment-driven settings.

A ``.env`` file at the repository root is loaded once on import; values are
read lazily so tests can patch ``os.environ``.
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_env(path: Optional[str] = None) -> bool:
    """Load ``path`` (default: ``.env`` at the repository root) without overriding set variables."""
    path = path or os.path.join(ROOT_DIR, ".env")
    if not os.path.exists(path):
        return False
    load_dotenv(path)
    logger.debug("Loaded environment from %s", path)
    return True


load_env()


def bench_threads() -> int:
    """Thread count for the benchmark runner (``COHOMOLOGY_BENCH_THREADS``)."""
    raw = os.environ.get("COHOMOLOGY_BENCH_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"COHOMOLOGY_BENCH_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"COHOMOLOGY_BENCH_THREADS must be >= 1, got {value}")
    return value


def log_level() -> int:
    name = os.environ.get("COHOMOLOGY_LOG_LEVEL", "WARNING").upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        raise ValueError(f"Unknown COHOMOLOGY_LOG_LEVEL: {name}")
    return level
