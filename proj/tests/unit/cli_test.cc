#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "esa/commands.h"
#include "esa/eval.h"
#include "esa/index.h"
#include "esa/semantics.h"
#include "fixtures.h"

namespace esa {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args) {
  args.insert(args.begin(), "esa");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Write(const std::string& path, const std::string& contents) {
  std::ofstream(path, std::ios::binary) << contents;
  return path;
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct PetshopFiles {
  std::string dir = testing::TempDir("cli");
  std::string corpus = Write(dir + "/corpus.jsonl",
                             "{\"id\": 1, \"title\": \"Cat\", \"text\": \"cat cat feline pet\"}\n"
                             "{\"id\": 2, \"title\": \"Mouse (rodent)\", \"text\": \"mouse rodent pet\"}\n"
                             "{\"id\": 3, \"title\": \"Mouse (computing)\", \"text\": \"mouse computer screen click\"}\n"
                             "{\"id\": 4, \"title\": \"Computer display\", \"text\": \"screen computer display\"}\n");
  std::string config = Write(dir + "/toy.toml",
                             "min_non_stop_words = 0\nmin_total_links = 0\n"
                             "min_term_articles = 1\n");
  std::string index = dir + "/index";

  ~PetshopFiles() { std::filesystem::remove_all(dir); }
};

TEST_CASE("cli workflow on the toy corpus") {
  PetshopFiles f;
  Result build = Run({"--config", f.config, "build", f.corpus, "--out", f.index,
                      "--term-stats", f.dir + "/terms.csv"});
  REQUIRE(build.code == 0);
  CHECK(build.out.find("concepts retained:            4") != std::string::npos);
  CHECK(ReadAll(f.dir + "/terms.csv").rfind("term,postings_before,postings_after\n", 0) ==
        0);

  SUBCASE("interpret") {
    Result top = Run({"--index", f.index, "interpret", "mouse screen", "--top", "1"});
    CHECK(top.code == 0);
    CHECK(top.out.find("Mouse (computing)") != std::string::npos);
    CHECK(std::count(top.out.begin(), top.out.end(), '\n') == 1);
    Result all = Run({"--index", f.index, "interpret", "mouse screen", "--top", "50"});
    CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 3);
    Result none = Run({"--index", f.index, "interpret", "quokka"});
    CHECK(none.code == 0);
    CHECK(none.out == "no concepts matched\n");
  }
  SUBCASE("relate") {
    CHECK(Run({"--index", f.index, "relate", "mouse screen", "mouse screen"}).out ==
          "1\n");
    CHECK(Run({"--index", f.index, "relate", "feline", "display"}).out == "0\n");
    CHECK(Run({"--index", f.index, "relate", "feline", "quokka"}).out == "0\tempty\n");
  }
  SUBCASE("eval-words with human scores equal to system scores") {
    Interpreter interpreter(LoadIndex(f.index));
    const char* words[][2] = {{"cat", "pet"},        {"mouse", "screen"},
                              {"computer", "display"}, {"rodent", "pet"},
                              {"click", "screen"},   {"feline", "mouse"}};
    std::string csv = "word1,word2,score,other\n";
    int i = 0;
    for (auto& w : words) {
      double s = interpreter.Relatedness(w[0], w[1]).score;
      csv += std::string(w[0]) + "," + w[1] + "," + std::to_string(s * 10) + "," +
             std::to_string(i++ % 3) + "\n";
    }
    Write(f.dir + "/pairs.csv", csv);
    Result eval = Run({"--index", f.index, "eval-words", "--pairs", f.dir + "/pairs.csv",
                       "--baseline-column", "other", "--out", f.dir + "/report"});
    REQUIRE(eval.code == 0);
    CHECK(eval.out.find("correlation:         1\n") != std::string::npos);
    CHECK(eval.out.find("p-value (two-sided): n/a") != std::string::npos);
    CHECK(std::filesystem::exists(f.dir + "/report.csv"));
    CHECK(std::filesystem::exists(f.dir + "/report.pairs.csv"));
    CHECK(ReadAll(f.dir + "/report.txt") == eval.out);
  }
  SUBCASE("eval-words baseline p-value") {
    Write(f.dir + "/pairs.csv",
          "word1,word2,score,lsa\ncat,pet,8,1\nmouse,screen,6,5\ncomputer,display,7,2\n"
          "rodent,pet,5,3\nclick,screen,4,4\nfeline,mouse,1,0\n");
    Result eval = Run({"--index", f.index, "eval-words", "--pairs", f.dir + "/pairs.csv",
                       "--baseline-column", "lsa"});
    REQUIRE(eval.code == 0);
    CHECK(eval.out.find("baseline:            lsa") != std::string::npos);
    CHECK(eval.out.find("p-value (two-sided): n/a") == std::string::npos);
    CHECK(eval.out.find("p-value (one-sided): ") != std::string::npos);
  }
  SUBCASE("eval-docs on 50 documents reports 1225 pairs") {
    const char* texts[] = {"cat feline", "mouse rodent", "computer screen",
                           "display screen", "pet cat", "click mouse", "rodent pet"};
    std::string docs;
    std::string pairs = "doc_id_a,doc_id_b,score\n";
    for (int i = 0; i < 50; ++i) {
      docs += "{\"id\": \"d" + std::to_string(i) + "\", \"text\": \"" + texts[i % 7] +
              "\"}\n";
      for (int j = i + 1; j < 50; ++j) {
        pairs += "d" + std::to_string(i) + ",d" + std::to_string(j) + "," +
                 std::to_string((i + j) % 5) + "\n";
      }
    }
    Write(f.dir + "/docs.jsonl", docs);
    Write(f.dir + "/docpairs.csv", pairs);
    Result eval = Run({"--index", f.index, "--threads", "3", "eval-docs", "--pairs",
                       f.dir + "/docpairs.csv", "--docs", f.dir + "/docs.jsonl",
                       "--baseline-r", "0.1", "--baseline-name", "prior"});
    REQUIRE(eval.code == 0);
    CHECK(eval.out.find("pairs:               1225") != std::string::npos);
    CHECK(eval.out.find("measure:             pearson") != std::string::npos);
    CHECK(eval.out.find("baseline:            prior") != std::string::npos);
  }
  SUBCASE("gen-features") {
    std::string train, test;
    const char* a[] = {"cat feline pet", "pet cat", "feline cat pet"};
    const char* b[] = {"computer screen", "screen display computer", "click computer"};
    for (int i = 0; i < 6; ++i) {
      train += "{\"id\": \"t" + std::to_string(i) + "\", \"title\": \"\", \"text\": \"" +
               (i % 2 ? b[i / 2] : a[i / 2]) + "\", \"labels\": [\"" +
               (i % 2 ? "tech" : "animal") + "\"]}\n";
    }
    test = "{\"id\": \"q1\", \"title\": \"Pets\", \"text\": \"rodent\", \"labels\": [\"animal\"]}\n"
           "{\"id\": \"q2\", \"title\": \"\", \"text\": \"display\", \"labels\": [\"tech\"]}\n";
    Write(f.dir + "/train.jsonl", train);
    Write(f.dir + "/test.jsonl", test);
    Write(f.dir + "/k0.toml", "top_k = 0\nrare_feature_min_docs = 1\n");
    Write(f.dir + "/k3.toml", "top_k = 3\nrare_feature_min_docs = 1\n");

    Result bow = Run({"--config", f.dir + "/k0.toml", "gen-features", "--train",
                      f.dir + "/train.jsonl", "--test", f.dir + "/test.jsonl", "--out",
                      f.dir + "/bow.jsonl"});
    REQUIRE(bow.code == 0);
    std::string bow_text = ReadAll(f.dir + "/bow.jsonl");
    CHECK(bow_text.find("\"concepts\":[]") != std::string::npos);
    CHECK(bow_text.find("\"id\":3") == std::string::npos);

    std::vector<std::string> outputs;
    for (const char* threads : {"1", "4", "1"}) {
      Result full = Run({"--config", f.dir + "/k3.toml", "--index", f.index, "--threads",
                         threads, "gen-features", "--train", f.dir + "/train.jsonl",
                         "--test", f.dir + "/test.jsonl", "--out",
                         f.dir + "/full.jsonl", "--evaluate"});
      REQUIRE(full.code == 0);
      CHECK(full.out.find("words+concepts\t") != std::string::npos);
      outputs.push_back(ReadAll(f.dir + "/full.jsonl") + full.out);
    }
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);
    CHECK(outputs[0].find("\"title\":\"Cat\"") != std::string::npos);
    CHECK(outputs[0].find("\"split\":\"test\"") != std::string::npos);
  }
  SUBCASE("rebuild is byte identical") {
    Result again = Run({"--config", f.config, "--threads", "4", "build", f.corpus,
                        "--out", f.dir + "/index2"});
    REQUIRE(again.code == 0);
    for (const char* file : {"manifest.json", "vocab.tsv", "postings.bin",
                             "concepts.tsv", "links.tsv"}) {
      CHECK(ReadAll(f.index + "/" + file) == ReadAll(f.dir + "/index2/" + file));
    }
  }
}

TEST_CASE("cli errors") {
  PetshopFiles f;
  Result stubs = Run({"build", f.corpus, "--out", f.index});
  CHECK(stubs.code != 0);
  CHECK(stubs.err.find("no concepts survive pruning") != std::string::npos);

  Result missing = Run({"build", f.dir + "/none.jsonl", "--out", f.index});
  CHECK(missing.code != 0);
  CHECK(!missing.err.empty());

  Write(f.dir + "/bad.jsonl", "{\"id\": 1, \"title\": \"A\", \"text\": \"a\"}\n{\"id\": 2}\n");
  Result bad = Run({"--config", f.config, "build", f.dir + "/bad.jsonl", "--out", f.index});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("line 2") != std::string::npos);

  Write(f.dir + "/bad.toml", "wibble = 1\n");
  CHECK(Run({"--config", f.dir + "/bad.toml", "build", f.corpus, "--out", f.index}).code !=
        0);
  CHECK(Run({"interpret", "cat"}).code != 0);
  CHECK(Run({"--index", f.dir + "/none", "interpret", "cat"}).code != 0);
  CHECK(Run({}).code != 0);
  CHECK(Run({"frobnicate"}).code != 0);
  CHECK(Run({"--threads", "0", "interpret", "cat"}).code != 0);
}

}  // namespace
}  // namespace esa
