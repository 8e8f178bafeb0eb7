// Writes the figure panels (SVG) and the even-n minimal surfaces (OBJ) into
// a directory: gallery [out-dir]

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "hshear/cli.hpp"
#include "hshear/render.hpp"
#include "hshear/surface_lift.hpp"

using namespace hshear;
namespace fs = std::filesystem;

namespace {

std::string file_stem(const FamilyParams& fp)
{
    std::string s = fp.label();
    for (char& ch : s)
        if (ch == ' ' || ch == '=')
            ch = '_';
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path dir = argc > 1 ? argv[1] : "gallery";
    fs::create_directories(dir);

    std::vector<std::pair<int, FamilyParams>> maps;
    for (double a : {0.0, 0.3, 0.7, 1.0})
        maps.emplace_back(1, FamilyParams::make_F_a(a));
    for (double a : {0.0, 0.3, 0.6, 1.0})
        maps.emplace_back(2, FamilyParams::make_F_0a(a));
    for (double a : {-1.0, -0.4, 0.0, 0.4, 1.0})
        maps.emplace_back(3, FamilyParams::make_F_1a(a));
    for (int n = 4; n <= 14; n += 2)
        maps.emplace_back(4, FamilyParams::make_f_0n(n));
    for (int n = 3; n <= 6; ++n)
        maps.emplace_back(5, FamilyParams::make_f_1n(n));
    for (int n = 4; n <= 14; n += 2)
        maps.emplace_back(6, FamilyParams::make_f_1n(n));
    for (int n = 3; n <= 6; ++n)
        maps.emplace_back(7, FamilyParams::make_f_2n(n));
    for (int n = 4; n <= 14; n += 2)
        maps.emplace_back(8, FamilyParams::make_f_2n(n));
    for (double c : {0.0, 0.2, 0.5, 0.8, 1.0, 1.5}) {
        maps.emplace_back(9, FamilyParams::make_f_cn(c, 3));
        maps.emplace_back(10, FamilyParams::make_f_cn(c, 4));
    }

    const RenderConfig cfg;
    for (const auto& [fig, fp] : maps) {
        const fs::path out = dir / ("figure" + std::to_string(fig) + "_" + file_stem(fp) + ".svg");
        cli::write_file(out.string(), render_map_svg(Family(fp), cfg));
        std::cout << out.string() << '\n';
    }

    const GridSpec grid{20, 48, 0.98};
    for (const auto& fp : {FamilyParams::make_f_0n(4), FamilyParams::make_f_1n(4), FamilyParams::make_f_2n(2),
                           FamilyParams::make_f_2n(4), FamilyParams::make_f_cn(0.5, 4)}) {
        const fs::path out = dir / ("surface_" + file_stem(fp) + ".obj");
        cli::write_file(out.string(), render_obj(build_mesh(fp, grid)));
        std::cout << out.string() << '\n';
    }
    return 0;
}
