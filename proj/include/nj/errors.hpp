#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nj {

/// Syntax error in the polynomial expression language. `position` is the
/// 0-based byte offset into the input at which the error was detected.
class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// A polynomial map does not have the structured shape
/// (u(x,y), u2(x,y,x3), ..., u_{n-1}(x,y,x_n), u_n(x,y)).
class shape_error : public std::runtime_error {
  public:
    shape_error(const std::string& msg, int component = 0, int variable = 0)
      : std::runtime_error(msg), component_(component), variable_(variable) {}
    int component() const { return component_; }
    int variable() const { return variable_; }

  private:
    int component_;
    int variable_;
};

/// Family parameters violate one of the validation conditions.
/// `condition` names the violated condition: "(a)", "(b)", "(c)", "nice",
/// "range", ...
class validation_error : public std::runtime_error {
  public:
    validation_error(const std::string& msg, std::string condition)
      : std::runtime_error(msg), condition_(std::move(condition)) {}
    const std::string& condition() const { return condition_; }

  private:
    std::string condition_;
};

/// A concrete map lies outside the classified family (recovery or
/// decomposition failed structurally).
class family_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Formal inversion failed (singular linear part, or the truncation bound
/// was exhausted without polynomial closure).
class inversion_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace nj
