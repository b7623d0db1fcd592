#include "balk1/json_io.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace balk1;
using namespace balk1::io;

namespace {

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / "balk1_test_json_io" / name;
}

}  // namespace

TEST_CASE("matrices round trip exactly") {
    const CMatrix m = numkern::random_gaussian(3, 2, 4);
    const json j = to_json(m);
    CHECK(j.at("re").size() == 3);
    CHECK(j.at("re")[0].size() == 2);
    CHECK(j.at("im")[2][1].get<double>() == m(2, 1).imag());
    CHECK((matrix_from_json(j) - m).norm() == 0.0);
    CHECK((matrix_from_json(json::parse(j.dump())) - m).norm() == 0.0);
}

TEST_CASE("pairs, loops and operators round trip") {
    const auto p = balanced::random_balanced_pair(3, 8);
    const auto q = pair_from_json(to_json(p));
    CHECK((q.a - p.a).norm() == 0.0);
    CHECK((q.b - p.b).norm() == 0.0);
    CHECK(q.tol == p.tol);

    const auto sp = loops::circle_symbol_pair(1, -1, 64);
    const auto sq = symbol_pair_from_json(json::parse(to_json(sp).dump()));
    CHECK(sq.grid() == 64);
    CHECK(sq.dim() == 2);
    CHECK((sq.plus.sigma2.samples[17] - sp.plus.sigma2.samples[17]).norm() == 0.0);
    CHECK((sq.minus.sigma1.samples[5] - sp.minus.sigma1.samples[5]).norm() == 0.0);
    CHECK(to_json(sp.plus.sigma1).at("param") == "glued-0-pi/2");

    // A bare loop pair is the plus component.
    const auto bare = symbol_pair_from_json(to_json(sp.plus));
    CHECK((bare.plus.sigma1.samples[9] - sp.plus.sigma1.samples[9]).norm() == 0.0);
    CHECK((bare.minus.sigma1.samples[9] - CMatrix::Identity(2, 2)).norm() == 0.0);

    opmodel::TruncOp x = opmodel::TruncOp::zero(4, 2);
    x.plus = numkern::random_gaussian(10, 10, 1);
    x.minus = numkern::random_gaussian(8, 8, 2);
    const auto y = trunc_op_from_json(to_json(x));
    CHECK(y.modes == 4);
    CHECK((y.plus - x.plus).norm() == 0.0);
    CHECK((y.minus - x.minus).norm() == 0.0);
}

TEST_CASE("malformed input raises IoError") {
    CHECK_THROWS_AS(matrix_from_json(json{{"re", {{1, 2}, {3}}}, {"im", {{0, 0}, {0, 0}}}}), IoError);
    CHECK_THROWS_AS(matrix_from_json(json{{"im", {{1}}}}), IoError);
    CHECK(matrix_from_json(json{{"re", {{1, 2}}}}).imag().norm() == 0.0);  // "im" may be omitted
    CHECK_THROWS_AS(pair_from_json(json{{"dim", 2}}), IoError);
    json loop = to_json(loops::MatrixLoop::constant(CMatrix::Identity(1, 1), 4));
    loop["param"] = "zero-to-2pi";
    CHECK_THROWS_AS(loop_from_json(loop), IoError);
    loop["param"] = "glued-0-pi/2";
    loop["grid"] = 5;
    CHECK_THROWS_AS(loop_from_json(loop), IoError);
    CHECK_THROWS_AS(read_json(BALK1_TEST_DATA "/malformed.json"), IoError);
    CHECK_THROWS_AS(read_json(scratch("does_not_exist.json")), IoError);
}

TEST_CASE("files") {
    const auto path = scratch("nested/dir/pair.json");
    std::filesystem::remove_all(scratch(""));
    const auto p = balanced::random_balanced_pair(2, 1);
    write_json(path, to_json(p));
    const auto q = pair_from_json(read_json(path));
    CHECK((q.a - p.a).norm() == 0.0);
    std::filesystem::remove_all(scratch(""));
}

TEST_CASE("reports") {
    const auto p = balanced::random_balanced_pair(2, 1);
    const json b = to_json(balanced::check_balanced(p.a, p.b, 1e-10));
    CHECK(b.at("balanced").get<bool>());

    const auto suite = starpoly::parse_suite("[u]\ntarget = a* a - b* b\nideal = rel1\n");
    const auto rep = starpoly::verify_identity_suite(suite);
    const json s = to_json(rep, suite);
    CHECK(s.dump().find("\"u\"") != std::string::npos);

    const auto csv = det_c_csv(loops::circle_symbol_pair(1, 0, 16).plus);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,abs_det_c,arg_det_c");
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 16);

    relindex::SweepRow row;
    row.p = 1;
    row.q = -1;
    row.report.analytic_svd = -2;
    row.report.topological = -2;
    row.report.pass = true;
    const auto sw = sweep_csv({row});
    CHECK(sw.rfind("p,q,analytic,topological,pass,max_residue,error\n", 0) == 0);
    CHECK(sw.find("1,-1,-2,-2,") != std::string::npos);
}
