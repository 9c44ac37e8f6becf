// Copyright 2026 The lrr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lrr/config.hpp"

#include <fstream>
#include <sstream>

#include "lrr/error.hpp"

namespace lrr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput(origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw InvalidInput(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key))
      throw InvalidInput(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void ConfigFile::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_)
    if (!allowed.count(k)) throw InvalidInput(origin_ + ": unknown key '" + k + "'");
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long long ConfigFile::get_int(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values_.at(key);
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw InvalidInput(origin_ + ": key '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

std::uint64_t ConfigFile::get_u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values_.at(key);
  std::size_t used = 0;
  std::uint64_t out = 0;
  try {
    if (!v.empty() && v[0] != '-') out = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw InvalidInput(origin_ + ": key '" + key + "' expects an unsigned integer, got '" + v + "'");
  return out;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values_.at(key);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw InvalidInput(origin_ + ": key '" + key + "' expects a number, got '" + v + "'");
  return out;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values_.at(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidInput(origin_ + ": key '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<std::string> ConfigFile::get_list(const std::string& key,
                                              const std::vector<std::string>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<std::string> out;
  std::istringstream ss(values_.at(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<long long> ConfigFile::get_int_list(const std::string& key,
                                                const std::vector<long long>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<long long> out;
  for (const auto& item : get_list(key, {})) {
    ConfigFile one;
    one.origin_ = origin_;
    one.values_[key] = item;
    out.push_back(one.get_int(key, 0));
  }
  return out;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key,
                                                const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> out;
  for (const auto& item : get_list(key, {})) {
    ConfigFile one;
    one.origin_ = origin_;
    one.values_[key] = item;
    out.push_back(one.get_double(key, 0.0));
  }
  return out;
}

}  // namespace lrr
