# Copyright 2026 The fusionsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python front end for the fusionsim C++ core."""

import json

from fusionsim._fusionsim import (
    ConfigError,
    commands,
    config_keys,
    estimate_cost,
    fuse,
    graph_adjacency,
    main,
    mermin_abs,
    run_json,
    sample_multinomial,
)

__all__ = [
    "ConfigError",
    "commands",
    "config_keys",
    "estimate_cost",
    "fuse",
    "graph_adjacency",
    "main",
    "mermin_abs",
    "run",
    "sample_multinomial",
]


def run(command, **settings):
    """Runs a CLI command and returns the report as a dict.

    Keyword arguments are config keys; lists are joined with commas.
    """
    overrides = {}
    for key, value in settings.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        overrides[key] = str(value)
    return json.loads(run_json(command, overrides))
