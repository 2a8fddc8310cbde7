#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pslab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

// First non-comment line.
std::string header(const std::string& csv) {
  for (const auto& l : lines(csv)) {
    if (!l.starts_with("#")) return l;
  }
  return {};
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> v;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  return v;
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> v;
  bool seen_header = false;
  for (const auto& l : lines(csv)) {
    if (l.starts_with("#")) continue;
    if (seen_header) v.push_back(l);
    seen_header = true;
  }
  return v;
}

const std::vector<std::string> kTheory{"--alpha", "sqrt:2", "--gamma", "19/20"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST(Cli, ParamsRow) {
  const auto r = invoke(with({"params", "--conv-q", "985"}, kTheory));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(r.out), "q,a,N,Delta,delta_formula,delta_clamped,H,M,theta,bits");
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].starts_with("985,1393,1139,")) << rows[0];
  EXPECT_NE(r.err.find("clamp"), std::string::npos);
}

TEST(Cli, ConvIndexMatchesConvQ) {
  const auto by_q = invoke(with({"params", "--conv-q", "169"}, kTheory));
  const auto by_k = invoke(with({"params", "--conv-index", "7"}, kTheory));
  ASSERT_EQ(by_q.code, 0);
  ASSERT_EQ(by_k.code, 0);
  EXPECT_EQ(data_rows(by_q.out), data_rows(by_k.out));
}

TEST(Cli, PsPrimesCountAndList) {
  const auto c = invoke({"ps-primes", "--gamma", "19/20", "--limit", "10"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(header(c.out), "X,count,ratio,ambiguous");
  EXPECT_TRUE(data_rows(c.out).at(0).starts_with("10,4,"));
  const auto l = invoke({"ps-primes", "--gamma", "19/20", "--limit", "10", "--list"});
  ASSERT_EQ(l.code, 0);
  EXPECT_EQ(data_rows(l.out), (std::vector<std::string>{"2,2", "3,3", "5,5", "7,7"}));
}

TEST(Cli, ScalingColumnsAreExact) {
  const auto r = invoke(with({"scaling-report", "--conv-q", "169", "--conv-q", "408"}, kTheory));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(r.out), "q,N,Delta,H,M,theta,abs_gamma,gamma_norm,pass_count,expectation,ratio");
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].starts_with("169,188,"));
  EXPECT_TRUE(rows[1].starts_with("408,463,"));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"params", "--alpha", "sqrt:2", "--conv-q", "985"}).code, 2);  // no gamma
  EXPECT_EQ(invoke(with({"params", "--conv-q", "985", "--bogus"}, kTheory)).code, 2);
  EXPECT_EQ(invoke({"params", "--alpha", "sqrt:2", "--gamma", "0.95", "--conv-q", "985"}).code, 2);
  EXPECT_EQ(invoke({"params", "--alpha", "sqrt:2", "--gamma", "1/2", "--conv-q", "985"}).code, 2);
  EXPECT_EQ(invoke({"params", "--alpha", "sqrt:4", "--gamma", "19/20", "--conv-q", "985"}).code, 2);
  EXPECT_EQ(invoke(with({"params", "--conv-q", "986"}, kTheory)).code, 2);
  EXPECT_EQ(invoke(with({"params", "--conv-q", "985", "--conv-index", "9"}, kTheory)).code, 2);
  EXPECT_EQ(invoke({"ps-primes", "--gamma", "19/20", "--limit", "10", "--workers", "0"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  const auto bad = invoke({"params", "--alpha", "sqrt:2", "--gamma", "0.95", "--conv-q", "985"});
  EXPECT_TRUE(bad.out.empty());
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  const auto v = invoke({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_FALSE(v.out.empty());
}

TEST(Cli, JsonMirrorsCsv) {
  const auto args = with({"gamma", "--conv-q", "408"}, kTheory);
  const auto csv = invoke(args);
  const auto json = invoke(with(args, {"--format", "json"}));
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  const auto doc = nlohmann::json::parse(json.out);
  std::string cols;
  for (const auto& c : doc["columns"]) cols += (cols.empty() ? "" : ",") + c.get<std::string>();
  EXPECT_EQ(cols, header(csv.out));
  ASSERT_EQ(doc["rows"].size(), data_rows(csv.out).size());
  EXPECT_EQ(doc["rows"][0]["N"].get<std::uint64_t>(), 463u);
  EXPECT_EQ(doc["meta"]["command"], "gamma");
  const double gamma_csv = std::stod(fields(data_rows(csv.out)[0]).at(3));
  EXPECT_EQ(doc["rows"][0]["Gamma"].get<double>(), gamma_csv);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "pslab_cli_test.csv";
  std::filesystem::remove(path);
  const auto r = invoke({"ps-primes", "--gamma", "19/20", "--limit", "100", "--output", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), invoke({"ps-primes", "--gamma", "19/20", "--limit", "100"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, WorkerCountDoesNotChangeOutput) {
  for (const auto& cmd : {with({"gamma", "--conv-q", "985"}, kTheory),
                          with({"search", "--conv-q", "408"}, kTheory),
                          with({"bounds-report", "--conv-q", "169"}, kTheory)}) {
    const auto one = invoke(with(cmd, {"--workers", "1"}));
    const auto eight = invoke(with(cmd, {"--workers", "8"}));
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(one.out, eight.out) << cmd[0];
  }
}

TEST(Cli, OtherCommandsRun) {
  const auto ex = invoke({"expsum", "--kind", "S", "--alpha", "sqrt:2", "--conv-q", "169", "--n",
                          "1000", "--h", "1", "2"});
  ASSERT_EQ(ex.code, 0) << ex.err;
  EXPECT_EQ(data_rows(ex.out).size(), 2u);
  const auto va = invoke({"vaughan-check", "--n1", "100", "--n2", "400", "--theta", "10"});
  ASSERT_EQ(va.code, 0) << va.err;
  EXPECT_EQ(header(va.out), "quantity,re,im");
  const auto qh = invoke({"qh-audit", "--alpha", "sqrt:2", "--conv-q", "985"});
  ASSERT_EQ(qh.code, 0) << qh.err;
  EXPECT_EQ(data_rows(qh.out).size(), 31u);
  EXPECT_EQ(invoke({"vaughan-check", "--n1", "3", "--n2", "400", "--theta", "10"}).code, 2);
}
