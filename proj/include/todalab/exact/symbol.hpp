#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace todalab::exact {

/// Interned variable name. Two symbols with the same name share an id for
/// the lifetime of the process; ids are only used for fast comparison, while
/// the display order (`display_less`) depends on names alone so that text
/// output does not depend on interning order.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  std::uint32_t id() const { return id_; }
  const std::string& name() const;

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  std::uint32_t id_ = 0;
};

/// Natural ordering on names: digit runs compare numerically, so
/// "q2" < "q10" and "u1_2" < "u1_10".
bool display_less(Symbol a, Symbol b);
bool natural_less(std::string_view a, std::string_view b);

// Standard symbols shared across modules.
Symbol hbar();
Symbol lambda(int i);
Symbol toda_q(int i);  // q_i = exp(t_i - t_{i-1}), i >= 1
Symbol toda_p(int i);  // commuting momentum p_i
Symbol char_x();       // spectral parameter of det(A + xI)
Symbol epsilon();      // genus parameter of the quantized operators

}  // namespace todalab::exact
