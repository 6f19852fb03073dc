#include "core/matrix.hpp"

#include <sstream>

namespace atlas {

std::string mat_to_string(const Mat2& m) {
  std::ostringstream out;
  out << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
  return out.str();
}

Mat2 mat_parse_csv(const std::string& text) {
  std::array<Int, 4> vals{};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t next = text.find(',', pos);
    std::string tok = (next == std::string::npos) ? text.substr(pos)
                                                  : text.substr(pos, next - pos);
    if (tok.empty()) fail(ErrorCode::InvalidArgument, "empty matrix entry in '" + text + "'");
    try {
      vals[i] = std::stoll(tok);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "bad matrix entry '" + tok + "'");
    }
    if (next == std::string::npos) {
      if (i != 3) fail(ErrorCode::InvalidArgument, "matrix needs 4 entries: '" + text + "'");
      pos = text.size();
    } else {
      pos = next + 1;
    }
  }
  if (pos != text.size() && text.find(',', pos) != std::string::npos)
    fail(ErrorCode::InvalidArgument, "too many entries in '" + text + "'");
  return {vals[0], vals[1], vals[2], vals[3]};
}

std::vector<Mat2> parse_generator_spec(const std::string& text) {
  std::vector<Mat2> gens;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(';', pos);
    std::string part = (next == std::string::npos) ? text.substr(pos)
                                                   : text.substr(pos, next - pos);
    if (!part.empty()) gens.push_back(mat_parse_csv(part));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "empty generator spec");
  return gens;
}

}  // namespace atlas
