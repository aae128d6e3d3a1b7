#include "cli/app.hpp"

int main(int argc, char** argv)
{
    return hosc::cli::main(argc, argv);
}
