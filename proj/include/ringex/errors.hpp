#pragma once

#include <stdexcept>
#include <string>

namespace ringex {

// Base for all library errors. code() is a stable kebab-case tag used by the
// CLI error envelope; what() carries the human-readable message.
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct invalid_spec_error : error {
  explicit invalid_spec_error(const std::string& msg) : error("invalid-spec", msg) {}
};

struct not_uniform_error : error {
  explicit not_uniform_error(const std::string& msg)
      : error("analytic-requires-uniform", msg) {}
};

struct invalid_excitation_error : error {
  explicit invalid_excitation_error(const std::string& msg)
      : error("invalid-excitation", msg) {}
};

struct invalid_occupation_error : error {
  explicit invalid_occupation_error(const std::string& msg)
      : error("invalid-occupation", msg) {}
};

struct invalid_label_error : error {
  explicit invalid_label_error(const std::string& msg) : error("invalid-label", msg) {}
};

struct invalid_manifold_error : error {
  explicit invalid_manifold_error(const std::string& msg)
      : error("invalid-manifold-pair", msg) {}
};

struct selection_rule_error : error {
  explicit selection_rule_error(const std::string& msg)
      : error("selection-rule-violated", msg) {}
};

struct no_accidental_level_error : error {
  explicit no_accidental_level_error(const std::string& msg)
      : error("no-accidental-level", msg) {}
};

struct tracking_ambiguous_error : error {
  explicit tracking_ambiguous_error(const std::string& msg)
      : error("tracking-ambiguous", msg) {}
};

struct dimension_mismatch_error : error {
  explicit dimension_mismatch_error(const std::string& msg)
      : error("dimension-mismatch", msg) {}
};

struct eig_error : error {
  explicit eig_error(const std::string& msg) : error("eigensolver-failure", msg) {}
};

}  // namespace ringex
