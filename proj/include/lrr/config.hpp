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

#ifndef LRR_CONFIG_HPP_
#define LRR_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lrr {

/// Flat key=value file. '#' starts a comment; lists are comma separated.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text, const std::string& origin = "config");
  static ConfigFile load(const std::string& path);

  /// Throws InvalidInput naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const;
  std::vector<long long> get_int_list(const std::string& key,
                                      const std::vector<long long>& fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
};

}  // namespace lrr

#endif  // LRR_CONFIG_HPP_
