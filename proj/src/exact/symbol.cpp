#include "todalab/exact/symbol.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace todalab::exact {
namespace {

struct Registry {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;

  Registry() {
    names.emplace_back("");
    ids.emplace("", 0);
  }

  std::uint32_t intern(std::string_view name) {
    std::string key(name);
    {
      std::shared_lock lock(mutex);
      if (auto it = ids.find(key); it != ids.end()) return it->second;
    }
    std::unique_lock lock(mutex);
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names.size());
    names.push_back(key);
    ids.emplace(std::move(key), id);
    return id;
  }

  const std::string& name(std::uint32_t id) {
    std::shared_lock lock(mutex);
    return names[id];
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(registry().intern(name)) {}

const std::string& Symbol::name() const { return registry().name(id_); }

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      auto ra = a.substr(i, ie - i), rb = b.substr(j, je - j);
      while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
      while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      if (ra != rb) return ra < rb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return (a.size() - i) < (b.size() - j);
}

bool display_less(Symbol a, Symbol b) {
  if (a == b) return false;
  return natural_less(a.name(), b.name());
}

Symbol hbar() {
  static const Symbol s("hbar");
  return s;
}

Symbol lambda(int i) { return Symbol("lambda" + std::to_string(i)); }
Symbol toda_q(int i) { return Symbol("q" + std::to_string(i)); }
Symbol toda_p(int i) { return Symbol("p" + std::to_string(i)); }

Symbol char_x() {
  static const Symbol s("x");
  return s;
}

Symbol epsilon() {
  static const Symbol s("eps");
  return s;
}

}  // namespace todalab::exact
