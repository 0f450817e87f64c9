// Pass/fail check lists shared by the verification commands.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace thmc {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
  /// Non-gating items record findings (e.g. a refuted side claim) without
  /// affecting the overall verdict.
  bool gating = true;
};

class Report {
 public:
  void add(std::string name, bool pass, std::string detail = {});
  void note(std::string name, bool pass, std::string detail = {});
  void merge(const Report& other, const std::string& prefix = {});
  /// Over gating items only.
  bool all_pass() const noexcept;
  std::size_t failures() const noexcept;
  const std::vector<CheckItem>& items() const noexcept { return items_; }
  nlohmann::json to_json() const;

 private:
  std::vector<CheckItem> items_;
};

}  // namespace thmc
