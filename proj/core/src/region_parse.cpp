#include "aperiodica/error.hpp"
#include "aperiodica/geometry.hpp"

#include <cctype>

namespace aperiodica {

namespace {

class RegionParser {
 public:
  explicit RegionParser(std::string_view s) : s_(s) {}

  Region run() {
    std::vector<Box> boxes;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '{') {
      ++pos_;
      expect('}');
      done();
      return Region();
    }
    boxes.push_back(product());
    while (accept('u')) boxes.push_back(product());
    done();
    return Region(std::move(boxes));
  }

 private:
  Box product() {
    Point lo, hi;
    do {
      expect('[');
      std::size_t comma = s_.find(',', pos_);
      if (comma == std::string_view::npos) error("missing ','");
      lo.push_back(Scalar::parse(s_.substr(pos_, comma - pos_)));
      pos_ = comma + 1;
      std::size_t close = s_.find(']', pos_);
      if (close == std::string_view::npos) error("missing ']'");
      hi.push_back(Scalar::parse(s_.substr(pos_, close - pos_)));
      pos_ = close + 1;
    } while (accept('x'));
    return Box(std::move(lo), std::move(hi));
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  void done() {
    skip();
    if (pos_ != s_.size()) error("trailing input");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::parse_error,
         "bad region '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Region Region::parse(std::string_view text) { return RegionParser(text).run(); }

}  // namespace aperiodica
