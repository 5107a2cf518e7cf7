# Copyright 2026 The qsvm-ocr Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Simulated quantum support-vector classifier for two-character recognition."""

from ._core import (
    BlankHalfError,
    EigenphaseOverflowError,
    PgmFormatError,
    QuantumSvm,
    SingularSystemError,
    classical_classify,
    decision_value,
    featurize,
    hhl_solve,
    kernel_matrix,
    qsvm_classify,
    raw_ratios,
    simulated_kernel,
    solve_ls_svm,
    solve_no_offset,
)

__all__ = [
    "BlankHalfError",
    "EigenphaseOverflowError",
    "PgmFormatError",
    "QuantumSvm",
    "SingularSystemError",
    "classical_classify",
    "decision_value",
    "featurize",
    "hhl_solve",
    "kernel_matrix",
    "qsvm_classify",
    "raw_ratios",
    "simulated_kernel",
    "solve_ls_svm",
    "solve_no_offset",
]
