// Copyright 2026 The lexaug Authors
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

#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lexaug/error.hpp"

namespace lexaug {

/// Sectioned key-value configuration ("[section]" headers, "key = value"
/// lines, ';' or '#' comments). Values are converted on access.
class Ini {
 public:
  static Ini parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    Ini ini;
    try {
      boost::property_tree::ini_parser::read_ini(in, ini.tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw Error("config line " + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [name, section] : ini.tree_) {
      if (section.empty() && !section.data().empty()) throw Error("config key '" + name + "' is outside any section");
    }
    return ini;
  }

  // Rejects sections or keys not listed, to catch typos early.
  void require_known(const std::set<std::string>& sections,
                     const std::map<std::string, std::set<std::string>>& keys) const {
    for (const auto& [name, section] : tree_) {
      if (!sections.count(name)) throw Error("unknown config section [" + name + "]");
      const auto allowed = keys.find(name);
      for (const auto& [key, value] : section) {
        if (allowed == keys.end() || !allowed->second.count(key)) {
          throw Error("unknown config key '" + key + "' in [" + name + "]");
        }
      }
    }
  }

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto value = sec->get_optional<std::string>(boost::property_tree::ptree::path_type(key, '\0'));
    if (!value) return std::nullopt;
    return *value;
  }

  bool has(const std::string& section, const std::string& key) const { return raw(section, key).has_value(); }

  std::string get_string(const std::string& section, const std::string& key) const {
    auto v = raw(section, key);
    if (!v) throw Error("missing config key '" + key + "' in [" + section + "]");
    return *v;
  }

  template <typename T>
  T get_or(const std::string& section, const std::string& key, T fallback) const {
    const auto v = raw(section, key);
    if (!v) return fallback;
    return convert<T>(*v, section + "." + key);
  }

  template <typename T>
  static T convert(const std::string& text, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (text == "true" || text == "yes" || text == "1") return true;
      if (text == "false" || text == "no" || text == "0") return false;
      throw Error("config " + where + ": expected a boolean, got '" + text + "'");
    } else if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else {
      T value{};
      const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
      if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw Error("config " + where + ": cannot parse '" + text + "'");
      }
      return value;
    }
  }

  // Comma-separated list with surrounding spaces trimmed; empty items dropped.
  static std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view item = text.substr(start, end - start);
      while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
      while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
      if (!item.empty()) items.emplace_back(item);
      start = end + 1;
    }
    return items;
  }

 private:
  boost::property_tree::ptree tree_;
};

}  // namespace lexaug
