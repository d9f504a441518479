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

"""Exception types raised by the engine.

Everything derives from ``ValueError`` so callers can catch bad input broadly;
``RuntimeError`` is reserved for broken internal invariants.
"""

from typing import Optional


class ChainComplexError(ValueError):
    """Boundary data does not form a chain complex."""


class ChainMapError(ValueError):
    """Component matrices do not commute with the boundaries."""


class UnknownSpaceError(ValueError):
    pass


class UnsupportedSpaceError(ValueError):
    """The space exists but has no model for the requested operation."""


class OwnerMismatchError(ValueError):
    pass


class IllDefinedHomError(ValueError):
    """A matrix does not respect the torsion of the source group."""


class SequenceError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed text input; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)
