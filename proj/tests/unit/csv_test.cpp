#include "catdiv/csv.hpp"
#include "catdiv/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace catdiv;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("catdiv_csv_test_" + name);
}

csv::Table sample() {
    csv::Table t;
    t.header = {"k", "status", "x_star"};
    t.rows.push_back({0.1, std::string("ok"), 6.5});
    t.rows.push_back({1.0 / 3.0, std::string("skipped: k, \"bound\""), std::nan("")});
    return t;
}

}  // namespace

TEST(Csv, NumbersUseSeventeenDigits) {
    EXPECT_EQ(csv::format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(csv::format_number(2.0), "2");
    EXPECT_EQ(csv::format_number(-2.0 / 3.0 * 1e-300), "-6.6666666666666668e-301");
    EXPECT_EQ(csv::format_number(std::nan("")), "nan");
    EXPECT_EQ(csv::format_number(-HUGE_VAL), "-inf");
}

TEST(Csv, QuotesOnlyWhenNeeded) {
    const auto text = csv::to_string(sample());
    EXPECT_EQ(text,
              "k,status,x_star\n"
              "0.10000000000000001,ok,6.5\n"
              "0.33333333333333331,\"skipped: k, \"\"bound\"\"\",nan\n");
}

TEST(Csv, TwoRowsGiveThreeLines) {
    const auto path = temp_file("three_lines.csv");
    csv::emit_csv(sample(), path);
    const auto text = csv::read_file(path);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    fs::remove(path);
}

TEST(Csv, EmissionIsByteIdentical) {
    const auto a = temp_file("a.csv");
    const auto b = temp_file("b.csv");
    csv::emit_csv(sample(), a);
    csv::emit_csv(sample(), b);
    EXPECT_EQ(csv::read_file(a), csv::read_file(b));
    fs::remove(a);
    fs::remove(b);
}

TEST(Csv, RoundTrip) {
    const auto back = csv::parse_csv(csv::to_string(sample()));
    ASSERT_EQ(back.header, sample().header);
    ASSERT_EQ(back.rows.size(), 2u);
    EXPECT_EQ(back.number(0, "k"), 0.1);
    EXPECT_EQ(back.number(1, "k"), 1.0 / 3.0);
    EXPECT_EQ(std::get<std::string>(back.rows[1][1]), "skipped: k, \"bound\"");
    EXPECT_TRUE(std::isnan(back.number(1, "x_star")));
}

TEST(Csv, ParsesCrLfAndQuotedNewlines) {
    const auto t = csv::parse_csv("a,b\r\n1,\"x\ny\"\r\n2,3\r\n");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(std::get<std::string>(t.rows[0][1]), "x\ny");
    EXPECT_EQ(t.number(1, "b"), 3.0);
}

TEST(Csv, QuotedNumbersStayText) {
    const auto t = csv::parse_csv("a\n\"12\"\n");
    EXPECT_EQ(std::get<std::string>(t.rows[0][0]), "12");
}

TEST(Csv, MalformedInputThrows) {
    EXPECT_THROW(csv::parse_csv("a,b\n1\n"), Error);
    EXPECT_THROW(csv::parse_csv("a\n\"open\n"), Error);
    EXPECT_THROW(csv::parse_csv(""), Error);
    EXPECT_THROW(csv::parse_csv("a\nx\n").number(0, "a"), Error);
    EXPECT_THROW(csv::parse_csv("a\n1\n").column("b"), Error);
}

TEST(Csv, IoErrorsNameThePath) {
    try {
        csv::emit_csv(sample(), "/nonexistent-dir/out.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
        EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
    }
    EXPECT_THROW(csv::read_file("/nonexistent-dir/in.csv"), Error);
}
