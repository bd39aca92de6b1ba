# Copyright 2026 The ebicert authors
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

"""Bell-strategy simulation and device-independent randomness certification
built on the elegant Bell inequality.

The heavy lifting lives in the compiled ``ebicert._core`` extension; this
package re-exports its public surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import QUANTUM_MAX, CLASSICAL_BOUND  # noqa: F401

__version__ = "0.1.0"
