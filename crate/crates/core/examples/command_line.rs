//! Drive the command-line interface from code.

pub fn run_example() -> ulam::Result<()> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = ulam::cli::run_with(
        ["ulam", "classify", "--alpha", "2", "--beta", "1", "--A", "0.5", "--B", "-1"],
        &mut out,
        &mut err,
    );
    println!("exit {code}\n{}", String::from_utf8_lossy(&out));
    let code = ulam::cli::run_with(["ulam", "exact", "--moment", "3", "--n", "5"], &mut out, &mut err);
    println!("exit {code}");
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
