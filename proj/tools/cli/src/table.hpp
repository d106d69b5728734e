// SPDX-License-Identifier: Apache-2.0
//
// beamsim: optimal analog beamforming analysis for sparse mmWave links
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

#include <iosfwd>
#include <string>
#include <vector>

namespace beamsim::app {

/// In-memory CSV table; every cell is preformatted text.
struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Appends a row with empty cells, returning it for filling by column name.
    std::vector<std::string>& add_row();
    void set(std::vector<std::string>& row, const std::string& column, const std::string& value) const;
};

/// RFC 4180 quoting: fields with a comma, quote, CR or LF are wrapped in
/// quotes with embedded quotes doubled. Lines end in CRLF.
std::string csv_field(const std::string& text);
void write_csv(std::ostream& out, const Table& table);

} // namespace beamsim::app
