#pragma once

#include <stdexcept>
#include <string>

namespace bm3 {

// Error categories; the CLI maps each category to a distinct exit code.
enum class errc { config = 2, io = 3, validation = 4, numeric = 5 };

class error : public std::runtime_error {
 public:
  error(errc category, const std::string& msg)
      : std::runtime_error(msg), category_(category) {}

  errc category() const { return category_; }

  const char* category_name() const {
    switch (category_) {
      case errc::config: return "config";
      case errc::io: return "io";
      case errc::validation: return "validation";
      case errc::numeric: return "numeric";
    }
    return "unknown";
  }

 private:
  errc category_;
};

[[noreturn]] inline void throw_config(const std::string& msg) {
  throw error(errc::config, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
  throw error(errc::io, msg);
}
[[noreturn]] inline void throw_validation(const std::string& msg) {
  throw error(errc::validation, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw error(errc::numeric, msg);
}

}  // namespace bm3
