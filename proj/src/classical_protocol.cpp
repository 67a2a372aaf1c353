#include "telesim/classical_protocol.hpp"

#include <array>
#include <stdexcept>

namespace telesim::classical {

BallColor opposite(BallColor c) {
  return c == BallColor::R ? BallColor::B : BallColor::R;
}

char to_char(BallColor c) { return c == BallColor::R ? 'R' : 'B'; }

std::string to_string(ClassicalInstruction i) {
  return i == ClassicalInstruction::Keep ? "keep" : "replace";
}

namespace {

using Codeword = std::array<BallColor, kCodewordLength>;

constexpr BallColor R = BallColor::R;
constexpr BallColor B = BallColor::B;

constexpr std::array<Codeword, kAlphabetSize> kAlphabet = {{
    {R, R, R}, {R, R, B}, {R, B, R}, {B, R, R},
    {R, B, B}, {B, R, B}, {B, B, R}, {B, B, B},
}};

}  // namespace

std::vector<BallColor> alphabet_encode(std::span<const int> symbols) {
  std::vector<BallColor> balls;
  balls.reserve(symbols.size() * kCodewordLength);
  for (const int s : symbols) {
    if (s < 0 || s >= kAlphabetSize) {
      throw std::invalid_argument("alphabet symbol out of range 0..7: " +
                                  std::to_string(s));
    }
    const Codeword& word = kAlphabet[static_cast<std::size_t>(s)];
    balls.insert(balls.end(), word.begin(), word.end());
  }
  return balls;
}

std::vector<int> alphabet_decode(std::span<const BallColor> balls) {
  if (balls.size() % kCodewordLength != 0) {
    throw std::invalid_argument(
        "ball sequence length must be a multiple of 3, got " +
        std::to_string(balls.size()));
  }
  std::vector<int> symbols;
  symbols.reserve(balls.size() / kCodewordLength);
  for (std::size_t i = 0; i < balls.size(); i += kCodewordLength) {
    const Codeword word = {balls[i], balls[i + 1], balls[i + 2]};
    for (int s = 0; s < kAlphabetSize; ++s) {
      if (kAlphabet[static_cast<std::size_t>(s)] == word) {
        symbols.push_back(s);
        break;
      }
    }
  }
  return symbols;
}

ClassicalMessage ClassicalMessage::from_balls(std::vector<BallColor> balls) {
  return ClassicalMessage{std::move(balls), std::nullopt};
}

ClassicalMessage ClassicalMessage::from_symbols(std::vector<int> symbols) {
  ClassicalMessage m;
  m.balls = alphabet_encode(symbols);
  m.symbols = std::move(symbols);
  return m;
}

ClassicalMessage ClassicalMessage::parse_balls(const std::string& text) {
  std::vector<BallColor> balls;
  balls.reserve(text.size());
  for (const char c : text) {
    if (c == 'R') {
      balls.push_back(BallColor::R);
    } else if (c == 'B') {
      balls.push_back(BallColor::B);
    } else {
      throw std::invalid_argument(std::string("message characters must be R or B, got '") +
                                  c + "'");
    }
  }
  return from_balls(std::move(balls));
}

ClassicalMessage ClassicalMessage::parse_symbols(const std::string& text) {
  std::vector<int> symbols;
  symbols.reserve(text.size());
  for (const char c : text) {
    if (c < '0' || c > '7') {
      throw std::invalid_argument(std::string("symbols must be digits 0..7, got '") + c +
                                  "'");
    }
    symbols.push_back(c - '0');
  }
  return from_symbols(std::move(symbols));
}

std::string ClassicalMessage::balls_text() const {
  std::string s;
  s.reserve(balls.size());
  for (const BallColor c : balls) s += to_char(c);
  return s;
}

BallPair lm_emit_pair(rng::Stream& stream) {
  const BallColor to_alice = stream.coin() ? BallColor::B : BallColor::R;
  const BallColor to_bob = stream.coin() ? BallColor::B : BallColor::R;
  return BallPair{to_alice, to_bob};
}

std::optional<BallPair> cliff_filter(BallPair p) {
  if (p.to_alice == p.to_bob) return std::nullopt;
  return p;
}

ClassicalInstruction alice_compare(BallColor message_ball,
                                   BallColor alice_ball) {
  return message_ball == alice_ball ? ClassicalInstruction::Replace
                                    : ClassicalInstruction::Keep;
}

BallColor bob_apply(BallColor bob_ball, ClassicalInstruction i) {
  return i == ClassicalInstruction::Keep ? bob_ball : opposite(bob_ball);
}

ClassicalRun run_classical_teleport(const ClassicalMessage& message,
                                    std::uint64_t seed) {
  ClassicalRun run;
  rng::Stream stream(seed);
  for (const BallColor message_ball : message.balls) {
    for (;;) {
      const BallPair pair = lm_emit_pair(stream);
      const auto surviving = cliff_filter(pair);
      if (!surviving) {
        run.records.push_back({pair, true, std::nullopt, std::nullopt});
        continue;
      }
      const ClassicalInstruction instruction =
          alice_compare(message_ball, surviving->to_alice);
      const BallColor final_ball = bob_apply(surviving->to_bob, instruction);
      run.records.push_back({pair, false, instruction, final_ball});
      run.box.push_back(final_ball);
      break;
    }
  }
  return run;
}

}  // namespace telesim::classical
