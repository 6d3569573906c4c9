// SPDX-License-Identifier: Apache-2.0
//
// flexarray - folded flexible patch antenna array and link simulator
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

#include <string>
#include <vector>

#include "flexarray/config.hpp"
#include "flexarray/modem.hpp"

namespace flexarray {

/// Locale-independent shortest round-trip decimal representation.
std::string format_double(double value);

/// Header: theta_deg,phi_deg,e_re_x,e_im_x,e_re_y,e_im_y,e_re_z,e_im_z,e_mag
std::string pattern_to_csv(const RadiationPattern& pattern);
Json pattern_to_json(const RadiationPattern& pattern);

Json impedance_to_json(const NamedFold& fold, const ImpedanceReport& report,
                       const PowerReport& power);

Json link_to_json(const LinkBudget& budget, const std::vector<Modulation>& modulations);

/// Header: modulation,snr_db,ber_analytic,ber_mc,ci95,bits,seed
std::string ber_table_csv(const std::vector<BerResult>& rows);

/// Header: xi1_deg,xi2_deg,e_peak,peak_theta_deg,peak_phi_deg,r_ant_ohm,
///         snr_db,ber_qam<M>...
std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const std::vector<Modulation>& modulations);

Json align_to_json(const AlignmentResult& result, const std::vector<Modulation>& modulations);

/// Writes text to path atomically enough for our purposes (truncate +
/// write); throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace flexarray
