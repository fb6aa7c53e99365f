#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cli.hpp"

namespace {

struct result {
  int code;
  std::string out;
  std::string err;
};

result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tmseq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = tmseq::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Generate) {
  EXPECT_EQ(run({"generate", "tm", "32"}).out, "01101001100101101001011001101001\n");
  EXPECT_EQ(run({"generate", "B", "21"}).out, "334233243342433233423\n");
  EXPECT_EQ(run({"generate", "A", "0"}).out, "\n");
  EXPECT_EQ(run({"generate", "Aplus", "4"}).out, "a bh> c< a\n");
  EXPECT_EQ(run({"generate", "Bcheck", "8"}).out, "24332334\n");
  EXPECT_EQ(run({"--format", "csv", "generate", "A", "3"}).out, "i,letter\n0,a\n1,b\n2,c\n");
  EXPECT_EQ(run({"--format", "json", "generate", "tm", "4"}).out,
            "{\"sequence\":\"tm\",\"length\":4,\"letters\":[\"0\",\"1\",\"1\",\"0\"]}\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"generate", "nope", "3"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"generate", "tm"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "generate", "tm", "3"}).code, 2);
  EXPECT_EQ(run({"gaps", "2", "3"}).code, 3);
  EXPECT_EQ(run({"gaps", "000", "3"}).code, 3);
  EXPECT_EQ(run({"generate", "tm", "99999999"}).code, 4);
  EXPECT_EQ(run({"discrepancy", "5..2"}).code, 2);
  EXPECT_EQ(run({"transducer", "run", "/nonexistent/file", "3"}).code, 3);
  auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("b^<"), std::string::npos);
}

TEST(Cli, Gaps) {
  EXPECT_EQ(run({"gaps", "01", "5", "scan"}).out, "3 3 4 2 3\n");
  EXPECT_EQ(run({"gaps", "010", "8", "morphic", "--family", "alternating"}).out,
            "k=2 members=01,10 s0=3 s1=2\n7 5 3 9 7 9 3 5\n");
  EXPECT_EQ(run({"gaps", "010", "8"}).out, "k=1 members=11,00 s0=1 s1=0\n7 5 3 9 7 9 3 5\n");
  EXPECT_EQ(run({"gaps", "00110", "4"}).out, "k=2 members=11,00 s0=1 s1=3\n18 6 10 14\n");
  EXPECT_EQ(run({"gaps", "01", "3", "morphic"}).out, "k=0 members=01 s0=0\n3 3 4\n");
  EXPECT_EQ(run({"--format", "csv", "gaps", "11", "3", "scan"}).out, "index,gap\n0,6\n1,6\n2,8\n");
}

TEST(Cli, Discrepancy) {
  EXPECT_EQ(run({"discrepancy", "41", "t2"}).out, "41 1\n");
  EXPECT_EQ(run({"discrepancy", "0", "brute"}).out, "0 0\n");
  EXPECT_EQ(run({"--format", "csv", "discrepancy", "0..3", "degree"}).out, "N,threeD\n0,0\n1,2\n2,1\n3,0\n");
  for (const char* m : {"brute", "degree", "t2", "t2base2"}) {
    EXPECT_EQ(run({"discrepancy", "0..47", m}).out, run({"discrepancy", "0..47", "brute"}).out) << m;
  }
  EXPECT_EQ(run({"--format", "json", "discrepancy", "40..41"}).out,
            "[{\"N\":40,\"threeD\":-1},{\"N\":41,\"threeD\":1}]\n");
}

TEST(Cli, Matching) {
  auto d = run({"matching", "3", "degrees"}).out;
  EXPECT_EQ(d.substr(0, 24), "0 0 0 0 0 0 0 0 0 0 -1 0");
  auto links = run({"--format", "csv", "matching", "2", "links"}).out;
  EXPECT_EQ(links.substr(0, 15), "i,j,dir\n1,2,bc\n");
  auto rot = run({"matching", "2", "rotate"}).out;
  EXPECT_NE(rot.find("\nabcabcabcabcabca\n"), std::string::npos);
}

TEST(Cli, TransducerRoundTrip) {
  auto dump = run({"transducer", "dump", "t1"});
  EXPECT_EQ(dump.code, 0);
  auto path = std::filesystem::temp_directory_path() / "tmseq_cli_t1.txt";
  std::ofstream(path) << dump.out;
  EXPECT_EQ(run({"transducer", "run", path.string(), "170"}).out, "value=-2 state=a\n");
  EXPECT_EQ(run({"transducer", "run", "t2", "41"}).out.substr(0, 10), "value=1/3 ");
  EXPECT_EQ(run({"transducer", "reduce", "t2"}).out, run({"transducer", "dump", "t2base2"}).out);
  EXPECT_EQ(run({"transducer", "run", "t1"}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, OtherCommands) {
  auto r = run({"residue", "0", "7", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verified=yes"), std::string::npos);
  auto k = run({"kernel", "A", "--depth", "4", "--prefix", "64"});
  EXPECT_EQ(k.code, 0);
  EXPECT_NE(k.out.find("closed=yes"), std::string::npos);
  auto e = run({"--format", "csv", "expsum", "5", "1", "--nu-max", "2"});
  EXPECT_EQ(e.out.substr(0, 28), "nu,absG\n0,1.000000000000e+00");
}

TEST(Cli, OutputFileAndDeterminism) {
  auto path = std::filesystem::temp_directory_path() / "tmseq_cli_out.txt";
  EXPECT_EQ(run({"-o", path.string(), "generate", "B", "21"}).out, "");
  std::ifstream in(path);
  std::string s((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(s, "334233243342433233423\n");
  std::filesystem::remove(path);
  EXPECT_EQ(run({"--format", "json", "kernel", "B", "--depth", "3", "--prefix", "32"}).out,
            run({"--format", "json", "kernel", "B", "--depth", "3", "--prefix", "32"}).out);
}

TEST(Cli, Verify) {
  auto v = run({"verify"});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(run({"verify", "nothing"}).code, 2);
}
