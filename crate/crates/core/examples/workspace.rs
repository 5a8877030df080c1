// Loading a JSON workspace and running batch commands against it.

use tmodel::cli::{run_command, Workspace};

pub fn run_example() -> tmodel::Result<()> {
    let text = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/workspaces/moore.json"));
    let ws = Workspace::parse(text)?;
    assert_eq!(ws.serialize(), text);

    let out = std::env::temp_dir().join(format!("tmodel-example-{}", std::process::id()));
    for (cmd, args) in [("homology", vec!["M2"]), ("derived-hom", vec!["M2", "M2"]), ("limlim1", vec!["Halving"])] {
        let args: Vec<String> = args.into_iter().map(String::from).collect();
        let report = run_command(&ws, cmd, &args, &out, 0)?;
        println!("$ {cmd} {}\n{}", args.join(" "), report.stdout.trim_end());
    }
    std::fs::remove_dir_all(&out).ok();
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
