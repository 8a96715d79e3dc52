# Copyright 2026 The QuBan Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""QuBan: adaptive reward quantization for bandits (C++ core)."""

from ._quban import (
    QubanError,
    decode,
    encode,
    encode_many,
    instantaneous_bound,
    lower_bound,
    preset_variants,
    run_experiment,
    sq_roundtrip,
    validate,
)

__all__ = [
    "QubanError",
    "decode",
    "encode",
    "encode_many",
    "instantaneous_bound",
    "lower_bound",
    "preset_variants",
    "run_experiment",
    "sq_roundtrip",
    "validate",
]
