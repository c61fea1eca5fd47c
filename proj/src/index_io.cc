#include <zlib.h>

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "esa/error.h"
#include "esa/index.h"
#include "json.hpp"

namespace esa {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kManifest = "manifest.json";
constexpr const char* kVocab = "vocab.tsv";
constexpr const char* kPostings = "postings.bin";
constexpr const char* kConcepts = "concepts.tsv";
constexpr const char* kLinks = "links.tsv";

void PutU32(std::string* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU64(std::string* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t U32() { return static_cast<std::uint32_t>(Read(4)); }
  std::uint64_t U64() { return Read(8); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::uint64_t Read(int width) {
    if (pos_ + width > bytes_.size()) throw Error("postings.bin is truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(
               static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string Sanitize(std::string_view field) {
  std::string out(field);
  for (char& ch : out) {
    if (ch == '\t' || ch == '\n' || ch == '\r') ch = ' ';
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::uint64_t ParseUnsigned(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(where + ": expected an unsigned integer, got '" + s + "'");
  }
}

void WriteFile(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

std::string Crc32Hex(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

void SaveIndex(const InvertedIndex& index, const std::string& directory) {
  const WeightedTable& table = index.table;
  fs::create_directories(directory);
  std::map<std::string, std::string> files;

  std::string vocab = "# term\tterm_id\tdf\tkept_postings\n";
  std::string postings;
  for (std::size_t t = 0; t < table.term_count(); ++t) {
    vocab += table.terms[t] + "\t" + std::to_string(t) + "\t" +
             std::to_string(table.document_frequency[t]) + "\t" +
             std::to_string(table.postings[t].size()) + "\n";
    PutU32(&postings, static_cast<std::uint32_t>(t));
    PutU32(&postings, static_cast<std::uint32_t>(table.postings[t].size()));
    for (const Posting& p : table.postings[t]) {
      PutU32(&postings, p.concept_id);
      PutU64(&postings, std::bit_cast<std::uint64_t>(p.weight));
    }
  }
  files[kVocab] = std::move(vocab);
  files[kPostings] = std::move(postings);

  std::string concepts = "# id\ttitle\tinlinks\toutlinks\tnon_stop_words\n";
  for (const Concept& c : index.concepts) {
    concepts += std::to_string(c.id) + "\t" + Sanitize(c.title) + "\t" +
                std::to_string(c.inlinks) + "\t" + std::to_string(c.outlinks) +
                "\t" + std::to_string(c.non_stop_word_count) + "\n";
  }
  files[kConcepts] = std::move(concepts);

  std::string links = "# source\ttarget\n";
  for (const auto& [source, target] : index.links) {
    links += std::to_string(source) + "\t" + std::to_string(target) + "\n";
  }
  files[kLinks] = std::move(links);

  json manifest;
  manifest["format_version"] = kIndexFormatVersion;
  manifest["n"] = table.concept_count;
  manifest["r"] = table.term_count();
  manifest["build_parameters"] = index.build_parameters;
  manifest["corpus_checksum"] = index.corpus_checksum;
  manifest["zero_weight_concepts"] = table.zero_columns;
  for (const auto& [name, bytes] : files) {
    manifest["files"][name] = {{"bytes", bytes.size()},
                               {"crc32", Crc32Hex(bytes)}};
    WriteFile(fs::path(directory) / name, bytes);
  }
  WriteFile(fs::path(directory) / kManifest, manifest.dump(2) + "\n");
}

InvertedIndex LoadIndex(const std::string& directory) {
  json manifest;
  try {
    manifest = json::parse(ReadFile(fs::path(directory) / kManifest));
  } catch (const json::exception& e) {
    throw Error(std::string("index manifest is not valid JSON: ") + e.what());
  }
  auto version = manifest.find("format_version");
  if (version == manifest.end() || !version->is_number_integer()) {
    throw Error("index manifest has no format_version");
  }
  if (version->get<int>() != kIndexFormatVersion) {
    throw Error("unsupported index format version " +
                std::to_string(version->get<int>()) + " (expected " +
                std::to_string(kIndexFormatVersion) + ")");
  }

  std::map<std::string, std::string> files;
  try {
    for (const char* name : {kVocab, kPostings, kConcepts, kLinks}) {
      const json& entry = manifest.at("files").at(name);
      std::string bytes = ReadFile(fs::path(directory) / name);
      if (bytes.size() != entry.at("bytes").get<std::size_t>() ||
          Crc32Hex(bytes) != entry.at("crc32").get<std::string>()) {
        throw Error(std::string("checksum mismatch for ") + name +
                    " (file truncated or modified)");
      }
      files[name] = std::move(bytes);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("index manifest is incomplete: ") + e.what());
  }

  InvertedIndex index;
  WeightedTable& table = index.table;
  try {
    table.concept_count = manifest.at("n").get<std::size_t>();
    index.build_parameters =
        manifest.at("build_parameters").get<std::map<std::string, std::string>>();
    index.corpus_checksum = manifest.at("corpus_checksum").get<std::string>();
    table.zero_columns =
        manifest.at("zero_weight_concepts").get<std::vector<ConceptId>>();
  } catch (const json::exception& e) {
    throw Error(std::string("index manifest is incomplete: ") + e.what());
  }

  std::vector<std::size_t> expected_kept;
  for (const std::string& line : Lines(files[kVocab])) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 4) throw Error("vocab.tsv: malformed line: " + line);
    if (ParseUnsigned(fields[1], "vocab.tsv") != table.terms.size()) {
      throw Error("vocab.tsv: term ids out of order at " + fields[0]);
    }
    table.terms.push_back(fields[0]);
    table.document_frequency.push_back(ParseUnsigned(fields[2], "vocab.tsv"));
    expected_kept.push_back(ParseUnsigned(fields[3], "vocab.tsv"));
  }
  if (table.terms.size() != manifest.at("r").get<std::size_t>()) {
    throw Error("vocab.tsv term count disagrees with manifest");
  }

  table.postings.assign(table.terms.size(), {});
  ByteReader reader(files[kPostings]);
  for (std::size_t t = 0; t < table.terms.size(); ++t) {
    if (reader.U32() != t) throw Error("postings.bin: term ids out of order");
    std::uint32_t count = reader.U32();
    if (count != expected_kept[t]) {
      throw Error("postings.bin: posting count disagrees with vocab.tsv");
    }
    auto& row = table.postings[t];
    row.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      Posting p;
      p.concept_id = reader.U32();
      p.weight = std::bit_cast<double>(reader.U64());
      row.push_back(p);
    }
  }
  if (!reader.done()) throw Error("postings.bin: trailing bytes");

  for (const std::string& line : Lines(files[kConcepts])) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 5) throw Error("concepts.tsv: malformed line: " + line);
    Concept c;
    c.id = static_cast<ConceptId>(ParseUnsigned(fields[0], "concepts.tsv"));
    c.title = fields[1];
    c.inlinks = ParseUnsigned(fields[2], "concepts.tsv");
    c.outlinks = ParseUnsigned(fields[3], "concepts.tsv");
    c.non_stop_word_count = ParseUnsigned(fields[4], "concepts.tsv");
    index.concepts.push_back(std::move(c));
  }
  for (const std::string& line : Lines(files[kLinks])) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 2) throw Error("links.tsv: malformed line: " + line);
    index.links.emplace_back(
        static_cast<ConceptId>(ParseUnsigned(fields[0], "links.tsv")),
        static_cast<ConceptId>(ParseUnsigned(fields[1], "links.tsv")));
  }
  return index;
}

}  // namespace esa
