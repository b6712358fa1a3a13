#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filter/lzma.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#include "stoffar/dataset.hpp"
#include "stoffar/run_record.hpp"

namespace stoffar {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_space(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_space(rest[e])) ++e;
  const std::string_view tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

SparseDataset parse_libsvm(std::istream& in, std::optional<Index> declared_features) {
  SparseDataset ds;
  std::string line;
  std::size_t lineno = 0;
  std::vector<Index> idx;
  std::vector<double> val;
  bool saw_minus = false;
  bool saw_zero = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest(line);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    const std::string_view label_tok = next_token(rest);
    if (label_tok.empty()) continue;

    double label_value = 0.0;
    if (!parse_number(label_tok, label_value)) {
      throw ParseError("malformed label '" + std::string(label_tok) + "'", lineno);
    }
    int label;
    if (label_value == 1.0) {
      label = 1;
    } else if (label_value == -1.0) {
      label = 0;
      saw_minus = true;
    } else if (label_value == 0.0) {
      label = 0;
      saw_zero = true;
    } else {
      throw ParseError("non-binary label '" + std::string(label_tok) + "'", lineno);
    }
    if (saw_minus && saw_zero) throw ParseError("mixed -1 and 0 labels", lineno);

    idx.clear();
    val.clear();
    for (std::string_view tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError("malformed token '" + std::string(tok) + "'", lineno);
      }
      Index j = 0;
      double v = 0.0;
      if (!parse_number(tok.substr(0, colon), j) || !parse_number(tok.substr(colon + 1), v) || j < 1) {
        throw ParseError("malformed token '" + std::string(tok) + "'", lineno);
      }
      if (!idx.empty() && j - 1 <= idx.back()) {
        throw ParseError("feature indices must be strictly increasing", lineno);
      }
      if (declared_features && j > *declared_features) {
        throw ParseError("feature index " + std::to_string(j) + " exceeds declared n = " +
                             std::to_string(*declared_features),
                         lineno);
      }
      idx.push_back(j - 1);
      val.push_back(v);
    }
    ds.add_row(idx, val, label);
  }
  if (in.bad()) throw std::runtime_error("parse_libsvm: read error");
  ds.set_label_style(saw_zero ? SparseDataset::LabelStyle::zero_one
                              : SparseDataset::LabelStyle::plus_minus);
  if (declared_features) ds.set_num_features(*declared_features);
  return ds;
}

void write_libsvm(std::ostream& out, const SparseDataset& ds) {
  const bool pm = ds.label_style() == SparseDataset::LabelStyle::plus_minus;
  for (Index i = 0; i < ds.num_samples(); ++i) {
    if (pm) {
      out << (ds.label(i) == 1 ? "+1" : "-1");
    } else {
      out << ds.label(i);
    }
    const auto idx = ds.row_indices(i);
    const auto val = ds.row_values(i);
    for (std::size_t j = 0; j < idx.size(); ++j) out << ' ' << idx[j] + 1 << ':' << format_double(val[j]);
    out << '\n';
  }
}

SparseDataset load_libsvm(const std::filesystem::path& path, std::optional<Index> declared_features) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  namespace io = boost::iostreams;
  io::filtering_istream in;
  const std::string ext = path.extension().string();
  if (ext == ".bz2") {
    in.push(io::bzip2_decompressor());
  } else if (ext == ".xz") {
    in.push(io::lzma_decompressor());
  } else if (ext == ".gz") {
    in.push(io::gzip_decompressor());
  }
  in.push(file);
  SparseDataset ds = parse_libsvm(in, declared_features);
  ds.set_name(path.stem().string());
  return ds;
}

}  // namespace stoffar
