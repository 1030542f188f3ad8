# Copyright 2026 The Unimotion Authors
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

"""Unicycle closed-loop control, turning effort and motion prediction."""

import json

from ._unimotion import (
    PreconditionError,
    ValidationError,
    fit_si,
    heading_error,
    predict,
    simulate,
    sine_integral,
    total_turning,
)

__all__ = [
    "PreconditionError",
    "ValidationError",
    "fit_si",
    "heading_error",
    "predict",
    "simulate",
    "sine_integral",
    "total_turning",
]

try:
    from ._unimotion import run as _run
except ImportError:  # built without the scenario library
    _run = None


if _run is not None:

    def run(command, scenario, out=None):
        """Runs a subcommand on a scenario file; returns (exit code, report)."""
        code, report = _run(command, str(scenario), None if out is None else str(out))
        return code, json.loads(report)

    __all__.append("run")
