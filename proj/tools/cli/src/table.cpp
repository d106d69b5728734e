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

#include "table.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace beamsim::app {

std::vector<std::string>& Table::add_row()
{
    rows.emplace_back(header.size());
    return rows.back();
}

void Table::set(std::vector<std::string>& row, const std::string& column, const std::string& value) const
{
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) throw std::logic_error("Table::set: no column '" + column + "'");
    row[static_cast<std::size_t>(it - header.begin())] = value;
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

void write_csv(std::ostream& out, const Table& table)
{
    auto write_line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out << ',';
            out << csv_field(cells[i]);
        }
        out << "\r\n";
    };
    write_line(table.header);
    for (const auto& row : table.rows) write_line(row);
}

} // namespace beamsim::app
