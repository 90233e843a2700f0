// Copyright 2026 The pencil-lift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tests/oracles/compute_fixtures.py; do not edit.
#pragma once

namespace plift::fixtures {

inline constexpr double kChoiSymMinEigenvalue = -0.039344662916631745;
inline constexpr double kChoiSymMaxEigenvalue = 0.7060113295832985;
inline constexpr double kIdentitySymChoiMinEigenvalue = -0.5;
inline constexpr double kChoiPencilGap = 0.06376937754855579;
inline constexpr double kCounterexampleEpsilon = 0.019672331458315873;
inline constexpr double kCounterexampleDeltaGrid = 0.08279347613077492;
inline constexpr double kCounterexampleDelta = 0.02866270387091356;
inline constexpr double kCounterexampleC0 = 42.11274057918702;
inline constexpr double kCounterexampleGapC0 = 0.13472760473508513;
inline constexpr double kCounterexampleGap2C0 = 0.13367297638608766;
inline constexpr double kCounterexampleGapAsym = 0.13366525154724693;
inline constexpr double kChoiPencilFactorThreshold = 0.6651165017947438;
inline constexpr double kChoiSkewAwareMargin = 0.03238917997399683;

}  // namespace plift::fixtures
