// SPDX-License-Identifier: Apache-2.0
//
// cryochan - geometric multipath channel simulation for metallic enclosures
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace cryochan {

/// Scene assembly failed (overlapping plates, plate wider than shell, ...).
/// The message lists the offending surfaces.
struct SceneConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An engine was handed a scene it cannot trace (e.g. curved surfaces in
/// the image-source engine).
struct UnsupportedSceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A CIR record too short to hold every path pulse; names the clipped path.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested metric has no defined value (zero-energy response).
struct UndefinedMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario file is malformed or violates the schema; message carries the
/// offending field.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cryochan
