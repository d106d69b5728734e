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

#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace beamsim::app {

namespace {

std::string trim(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

bool valid_identifier(const std::string& word)
{
    if (word.empty()) return false;
    for (char c : word) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    }
    return true;
}

std::string describe(const std::string& source, int line, const std::string& field, const std::string& message)
{
    std::string text = source;
    if (line > 0) text += ":" + std::to_string(line);
    text += ": ";
    if (!field.empty()) text += "field '" + field + "': ";
    return text + message;
}

} // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& field, const std::string& message)
    : std::runtime_error(describe(source, line, field, message)), source_(source), line_(line), field_(field)
{
}

ConfigFile parse_config(const std::string& text, const std::string& source)
{
    ConfigFile config;
    config.source = source;
    EntryMap* current = &config.globals;

    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string content = trim(raw);
        if (content.empty()) continue;

        if (content.front() == '[') {
            if (content.back() != ']') throw ConfigError(source, line, "", "unterminated section header");
            std::istringstream header(content.substr(1, content.size() - 2));
            ConfigSection section;
            section.line = line;
            header >> section.kind >> section.name;
            std::string extra;
            if (header >> extra) throw ConfigError(source, line, "", "section header has more than two words");
            if (section.kind == "sweep") {
                if (!valid_identifier(section.name)) {
                    throw ConfigError(source, line, "", "sweep name must be letters, digits, '_', '-' or '.'");
                }
                for (const auto& other : config.sections) {
                    if (other.kind == "sweep" && other.name == section.name) {
                        throw ConfigError(source, line, "", "duplicate sweep name '" + section.name + "'");
                    }
                }
            } else if (section.kind == "point") {
                if (!section.name.empty()) throw ConfigError(source, line, "", "[point] takes no name");
            } else {
                throw ConfigError(source, line, "", "unknown section kind '" + section.kind + "'");
            }
            config.sections.push_back(std::move(section));
            current = &config.sections.back().entries;
            continue;
        }

        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ConfigError(source, line, "", "expected 'key = value'");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (!valid_identifier(key)) throw ConfigError(source, line, key, "invalid key");
        if (current->count(key) != 0) {
            throw ConfigError(source, line, key,
                              "duplicate key (first set on line " + std::to_string(current->at(key).line) + ")");
        }
        current->emplace(key, ConfigEntry{value, line});
    }

    const auto version = config.globals.find("schema_version");
    if (version == config.globals.end()) throw ConfigError(source, 0, "schema_version", "required key is missing");
    if (version->second.value != std::to_string(schema_version)) {
        throw ConfigError(source, version->second.line, "schema_version",
                          "unsupported version '" + version->second.value + "' (expected " +
                              std::to_string(schema_version) + ")");
    }
    return config;
}

ConfigFile load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "", "cannot open configuration file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

double parse_number(const ConfigEntry& entry, const std::string& source, const std::string& field)
{
    const std::string text = trim(entry.value);
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError(source, entry.line, field, "'" + entry.value + "' is not a finite number");
    }
    return value;
}

std::vector<double> parse_number_list(const ConfigEntry& entry, const std::string& source, const std::string& field)
{
    const std::string text = trim(entry.value);
    if (text.empty()) throw ConfigError(source, entry.line, field, "value list is empty");

    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::istringstream stream(text);
        std::string part;
        while (std::getline(stream, part, ':')) parts.push_back(part);
        if (parts.size() != 3) throw ConfigError(source, entry.line, field, "range must be start:stop:count");
        const double start = parse_number({parts[0], entry.line}, source, field);
        const double stop = parse_number({parts[1], entry.line}, source, field);
        const double count = parse_number({parts[2], entry.line}, source, field);
        if (count < 1.0 || count != std::floor(count)) {
            throw ConfigError(source, entry.line, field, "range count must be a positive integer");
        }
        const auto n = static_cast<int>(count);
        if (n == 1) {
            values.push_back(start);
        } else {
            for (int i = 0; i < n; ++i) {
                // Endpoints exact; interior points by linear interpolation.
                values.push_back(i == n - 1 ? stop : start + (stop - start) * i / (n - 1));
            }
        }
    } else {
        std::istringstream stream(text);
        std::string item;
        while (std::getline(stream, item, ',')) {
            if (trim(item).empty()) throw ConfigError(source, entry.line, field, "empty list element");
            values.push_back(parse_number({item, entry.line}, source, field));
        }
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw ConfigError(source, entry.line, field, "values must be strictly increasing");
        }
    }
    return values;
}

std::vector<std::string> parse_word_list(const ConfigEntry& entry, const std::string& source,
                                         const std::string& field)
{
    std::vector<std::string> words;
    std::istringstream stream(entry.value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string word = trim(item);
        if (word.empty()) throw ConfigError(source, entry.line, field, "empty list element");
        words.push_back(word);
    }
    if (words.empty()) throw ConfigError(source, entry.line, field, "list is empty");
    return words;
}

} // namespace beamsim::app
