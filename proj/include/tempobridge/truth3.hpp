// Three-valued truth (true / unknown / false) with strong Kleene connectives.
#pragma once

#include <cstdint>
#include <string>

namespace tempobridge {

enum class Truth3 : std::uint8_t { False = 0, Bot = 1, True = 2 };

[[nodiscard]] constexpr Truth3 kleene_not(Truth3 v) {
  switch (v) {
    case Truth3::True: return Truth3::False;
    case Truth3::False: return Truth3::True;
    default: return Truth3::Bot;
  }
}

// Conjunction: false dominates, otherwise unknown dominates.
[[nodiscard]] constexpr Truth3 kleene_and(Truth3 a, Truth3 b) {
  if (a == Truth3::False || b == Truth3::False) return Truth3::False;
  if (a == Truth3::Bot || b == Truth3::Bot) return Truth3::Bot;
  return Truth3::True;
}

// Disjunction: true dominates, otherwise unknown dominates.
[[nodiscard]] constexpr Truth3 kleene_or(Truth3 a, Truth3 b) {
  if (a == Truth3::True || b == Truth3::True) return Truth3::True;
  if (a == Truth3::Bot || b == Truth3::Bot) return Truth3::Bot;
  return Truth3::False;
}

[[nodiscard]] constexpr Truth3 truth3_of_bool(bool b) {
  return b ? Truth3::True : Truth3::False;
}

// Canonical lowercase rendering: "true" / "bot" / "false".
[[nodiscard]] inline std::string to_string(Truth3 v) {
  switch (v) {
    case Truth3::True: return "true";
    case Truth3::Bot: return "bot";
    default: return "false";
  }
}

}  // namespace tempobridge
