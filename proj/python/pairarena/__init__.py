# Copyright 2026 The PairArena Authors.
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

"""Pairwise-comparison leaderboard engine.

Logistic maximum-likelihood ratings, online Elo updates, Fisher-information
diagnostics, proximity-based battle scheduling, binary-search placement for
new models, two-dimensional (cyclic-capable) score fits, and bootstrap
stability analysis.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__version__ = "0.1.0"
