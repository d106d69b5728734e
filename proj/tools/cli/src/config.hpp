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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamsim::app {

/// Schema violation in a run configuration; exit status 2.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(const std::string& source, int line, const std::string& field, const std::string& message);

    const std::string& source() const noexcept { return source_; }
    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::string source_;
    int line_;
    std::string field_;
};

struct ConfigEntry
{
    std::string value;
    int line = 0; // 0 for values that did not come from a file
};

using EntryMap = std::map<std::string, ConfigEntry>;

struct ConfigSection
{
    std::string kind; // "sweep" or "point"
    std::string name; // empty for [point]
    int line = 0;
    EntryMap entries;
};

/*!
 * Flat key-value run configuration.
 *
 * Lines are `key = value`; `#` starts a comment. Keys before the first
 * section header are run-wide settings. `[sweep NAME]` opens a sweep and
 * `[point]` holds fixed parameters for the single-point subcommands.
 */
struct ConfigFile
{
    std::string source;
    EntryMap globals;
    std::vector<ConfigSection> sections;
};

inline constexpr int schema_version = 1;

ConfigFile parse_config(const std::string& text, const std::string& source);
ConfigFile load_config(const std::string& path);

/// "a, b, c" or "start:stop:count" (count evenly spaced points, inclusive).
std::vector<double> parse_number_list(const ConfigEntry& entry, const std::string& source, const std::string& field);

/// Comma-separated words.
std::vector<std::string> parse_word_list(const ConfigEntry& entry, const std::string& source,
                                         const std::string& field);

double parse_number(const ConfigEntry& entry, const std::string& source, const std::string& field);

} // namespace beamsim::app
