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

from cohomology_engine.algebra.abgroup import (
    DirectSum,
    FgAbGroup,
    GroupElement,
    GroupHom,
    Presentation,
    Subquotient,
    cokernel,
    direct_sum,
    direct_sum_maps,
    ext_group,
    from_presentation,
    hom_group,
    image,
    is_isomorphic,
    kernel,
    parse_group,
    quotient_by_n,
    tensor,
    tor_group,
    torsion_sub,
)
from cohomology_engine.algebra.intmat import IntMatrix, SmithDecomposition, kernel_basis, rank_mod_p, smith
