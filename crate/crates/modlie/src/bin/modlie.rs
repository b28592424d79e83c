fn main() {
    // CLI wired up once the catalog module lands.
    eprintln!("modlie: catalog CLI not yet built");
    std::process::exit(1);
}
