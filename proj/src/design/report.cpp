#include "thmc/report.hpp"

#include <algorithm>

namespace thmc {

void Report::add(std::string name, bool pass, std::string detail) {
  items_.push_back({std::move(name), pass, std::move(detail), true});
}

void Report::note(std::string name, bool pass, std::string detail) {
  items_.push_back({std::move(name), pass, std::move(detail), false});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& item : other.items_) items_.push_back({prefix + item.name, item.pass, item.detail, item.gating});
}

bool Report::all_pass() const noexcept {
  return std::all_of(items_.begin(), items_.end(), [](const CheckItem& i) { return i.pass || !i.gating; });
}

std::size_t Report::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(items_.begin(), items_.end(), [](const CheckItem& i) { return !i.pass && i.gating; }));
}

nlohmann::json Report::to_json() const {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& i : items_) {
    nlohmann::json j{{"name", i.name}, {"pass", i.pass}};
    if (!i.detail.empty()) j["detail"] = i.detail;
    if (!i.gating) j["finding"] = true;
    items.push_back(std::move(j));
  }
  return {{"pass", all_pass()}, {"failures", failures()}, {"items", items}};
}

}  // namespace thmc
