import click
from app.cli.sweep_delay import sweep_delay
from app.cli.sample_path import sample_path
from app.cli.fairness import fairness
from app.cli.weight_table import weight_table
from app.cli.bounds import bounds
from app.cli.run import run

@click.group()
def cli():
    pass

cli.add_command(sweep_delay)
cli.add_command(sample_path)
cli.add_command(fairness)
cli.add_command(weight_table)
cli.add_command(bounds)
cli.add_command(run)
