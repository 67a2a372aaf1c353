#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "telesim/rng.hpp"

namespace telesim::classical {

enum class BallColor { R, B };

BallColor opposite(BallColor c);
char to_char(BallColor c);

/// One simultaneous emission: LM 2 feeds Alice, LM 1 feeds Bob.
struct BallPair {
  BallColor to_alice;
  BallColor to_bob;
};

enum class ClassicalInstruction { Keep, Replace };

std::string to_string(ClassicalInstruction i);

/// The eight three-ball codewords in their listed order:
/// RRR, RRB, RBR, BRR, RBB, BRB, BBR, BBB.
inline constexpr int kAlphabetSize = 8;
inline constexpr int kCodewordLength = 3;

/// Codeword concatenation for a symbol sequence; throws on out-of-range
/// symbols.
std::vector<BallColor> alphabet_encode(std::span<const int> symbols);

/// Inverse of alphabet_encode; throws unless the length is a multiple of 3.
std::vector<int> alphabet_decode(std::span<const BallColor> balls);

/// A ball sequence, optionally carrying the symbols it encodes.
struct ClassicalMessage {
  std::vector<BallColor> balls;
  std::optional<std::vector<int>> symbols;

  static ClassicalMessage from_balls(std::vector<BallColor> balls);
  static ClassicalMessage from_symbols(std::vector<int> symbols);

  /// "RRB" → balls; throws on other characters.
  static ClassicalMessage parse_balls(const std::string& text);
  /// "10" → symbols 1,0; throws on non-digit or digits 8/9.
  static ClassicalMessage parse_symbols(const std::string& text);

  std::string balls_text() const;
};

/// Both machines release one uniformly random ball; draws to_alice first.
BallPair lm_emit_pair(rng::Stream& stream);

/// Cliff drops same-color pairs; survivors are exactly the anti-correlated
/// RB and BR pairs.
std::optional<BallPair> cliff_filter(BallPair p);

/// Alice's comparison: different colors mean Bob's ball already matches the
/// message ball, same colors mean it must be replaced.
ClassicalInstruction alice_compare(BallColor message_ball,
                                   BallColor alice_ball);

BallColor bob_apply(BallColor bob_ball, ClassicalInstruction i);

struct ClassicalTrialRecord {
  BallPair lm_pair;
  bool filtered = false;
  std::optional<ClassicalInstruction> instruction;
  std::optional<BallColor> bob_final;
};

struct ClassicalRun {
  std::vector<BallColor> box;  // Bob's message box
  std::vector<ClassicalTrialRecord> records;
};

/// Runs the full conveyor: one surviving pair per message ball, filtered
/// pairs consume machine draws but no message balls. Bob's box always comes
/// out equal to the message.
ClassicalRun run_classical_teleport(const ClassicalMessage& message,
                                    std::uint64_t seed);

}  // namespace telesim::classical
