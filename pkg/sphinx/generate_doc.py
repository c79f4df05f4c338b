import os
import sys


def generate_doc(path_to_root_dir: str = '.'):
	source_dir = os.path.join(path_to_root_dir, "sphinx", "source")
	build_dir = os.path.join(path_to_root_dir, "sphinx", "build")
	commands = [
		f"sphinx-apidoc -f -o {source_dir} {os.path.join(path_to_root_dir, 'src', 'abelat')}",
		f"sphinx-build -E -b html {source_dir} {build_dir}",
	]
	for command in commands:
		print(f"Executing: {command}")
		os.system(command)


if __name__ == '__main__':
	root_dir = sys.argv[1] if len(sys.argv) > 1 else '..'
	generate_doc(root_dir)
