#include "susylab/cli/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <locale>
#include <sstream>

#include <unistd.h>

namespace susylab::cli {

std::string format_real(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
                      const std::string& config_hash) {
  std::string out = "# config_hash=" + config_hash + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    require(row.size() == header.size(), ErrorKind::LengthMismatch, "csv row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_real(row[i]);
    out += "\n";
  }
  return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::IoError, "cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace susylab::cli
