#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "fixtures.hpp"

#ifndef INTRINSIC_DIM_EXE
#error "INTRINSIC_DIM_EXE must name the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string output;  // stdout and stderr combined
};

Run run(const std::string& args) {
  const std::string cmd = std::string(INTRINSIC_DIM_EXE) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("idim_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("dim") {
  TempDir tmp;
  const auto toy = tmp.write("toy.dat", idim::fixtures::kToyText).string();
  auto r = run("dim " + toy + " --min-support 1/3 --min-confidence 1");
  CHECK(r.status == 0);
  CHECK(r.output == "rules=4 integral=1/9 dimension=81\n");

  r = run("dim " + toy + " --min-support 0.9 --min-confidence 1");
  CHECK(r.status == 0);
  CHECK(r.output == "rules=0 integral=0 dimension=inf\n");
}

TEST_CASE("input and usage errors") {
  TempDir tmp;
  const auto empty = tmp.write("empty.dat", "").string();
  const auto toy = tmp.write("toy.dat", idim::fixtures::kToyText).string();

  auto r = run("dim " + empty + " --min-support 0.5 --min-confidence 1");
  CHECK(r.status == 2);
  CHECK(r.output.find("no transactions") != std::string::npos);

  r = run("dim " + (tmp.path() / "missing.dat").string() + " --min-support 0.5 --min-confidence 1");
  CHECK(r.status == 2);

  CHECK(run("dim " + toy + " --min-support 0 --min-confidence 1").status == 3);
  CHECK(run("dim " + toy + " --min-support 1/3 --min-confidence 1.5").status == 3);
  CHECK(run("dim " + toy + " --min-support abc --min-confidence 1").status == 3);
  CHECK(run("sweep " + toy + " --supports '' --confidences 1").status == 3);
  CHECK(run("bogus").status == 3);
  CHECK(run("synth").status == 3);
}

TEST_CASE("stats") {
  TempDir tmp;
  const auto dup = tmp.write("dup.dat", "1 2\n1 2\n3\n").string();
  auto r = run("stats " + dup);
  CHECK(r.status == 0);
  CHECK(r.output ==
        "num_transactions=2\nnum_duplicates_removed=1\nuniverse_size=3\ndensity=1/2\n");
  r = run("stats " + dup + " --csv");
  CHECK(r.output == "num_transactions,num_duplicates_removed,universe_size,density\n2,1,3,1/2\n");
  r = run("stats " + dup + " --universe 6");
  CHECK(r.output.find("universe_size=6") != std::string::npos);
}

TEST_CASE("sweep and curve files") {
  TempDir tmp;
  const auto toy = tmp.write("toy.dat", idim::fixtures::kToyText).string();
  const auto out = (tmp.path() / "sweep.csv").string();
  auto r = run("sweep " + toy + " --supports 1/3,2/3 --confidences 1 --out " + out);
  CHECK(r.status == 0);
  const auto csv = slurp(out);
  CHECK(csv.rfind("dataset,min_support,min_confidence,num_rules,integral,dimension,integral_exact\n", 0) == 0);
  CHECK(csv.find("toy,") != std::string::npos);
  CHECK(csv.find(",81,1/9\n") != std::string::npos);

  r = run("curve " + toy + " --min-support 1/3 --min-confidence 1");
  CHECK(r.status == 0);
  CHECK(r.output.find(",1/6,1/3\n") != std::string::npos);
}

TEST_CASE("synth") {
  auto r = run("synth --cube 1");
  CHECK(r.status == 0);
  CHECK(r.output.find("dimension=4") != std::string::npos);
  r = run("synth --cube 2");
  CHECK(r.output.find("integral=3/8") != std::string::npos);
  CHECK(r.output.find("dimension=7.11111") != std::string::npos);

  TempDir tmp;
  const auto out = tmp.path() / "r.dat";
  r = run("synth --random 0,6,10,0.5 --out " + out.string());
  CHECK(r.status == 0);
  const auto expected = idim::random_transaction_db({0, 6, 10, 0.5});
  std::ifstream in(out);
  const auto parsed = idim::parse_transactions(in, 6).db;
  CHECK(parsed.transaction_count() == expected.transaction_count());
  // Same transactions as label sets.
  for (std::size_t t = 0; t < expected.transaction_count(); ++t) {
    std::set<std::string> a;
    std::set<std::string> b;
    for (auto i : expected.transaction(t)) a.insert(expected.label(i));
    for (auto i : parsed.transaction(t)) b.insert(parsed.label(i));
    CHECK(a == b);
  }
}
