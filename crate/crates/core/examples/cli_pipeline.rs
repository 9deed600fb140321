// The command-line pipeline in process: parse an input file, run commands.
use commuting_k0::cli::{parse_input, run_command, run_text, Command};
use commuting_k0::Result;

const INPUT: &str = "\
# companion matrix of t^2 + 1 next to the eigenvalue 1
field F 3
vars 1
dim 3
[[0,-1,0];[1,0,0];[0,0,1]]
vector [0, 0, 1]
";

fn main() -> Result<()> {
    let job = parse_input(INPUT)?;
    for cmd in [Command::Class, Command::Charpoly, Command::Split, Command::Decompose, Command::VerifyAdditivity] {
        let out = run_command(cmd, &job, commuting_k0::DEFAULT_SEED)?;
        println!("== {cmd:?} (exit {})\n{}", out.status as i32, out.text);
    }
    let (json, _) = run_text(Command::Class, INPUT, true, 0);
    println!("== Class --json\n{json}");
    let (err, code) = run_text(Command::Class, "field F 4\nvars 1\ndim 1\n[[0]]", false, 0);
    println!("== bad input (exit {code})\n{err}");
    Ok(())
}
