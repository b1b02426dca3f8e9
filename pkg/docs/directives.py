# -*- coding: utf-8 -*-
import importlib
import json
from sphinx.directives.code import CodeBlock


class RegistryDirective(CodeBlock):
    """ Pretty print a registry dictionary that maps names to classes. """

    has_content = True
    required_arguments = 2

    def run(self):
        module, name = self.arguments
        registry = getattr(importlib.import_module(module), name)
        names = {k: v.__name__ for k, v in registry.items()}
        self.content = f'{module}.{name} = {json.dumps(names, indent=2, sort_keys=True)}'.split('\n')
        self.arguments = ['python']
        return CodeBlock.run(self)


def setup(app):
    app.add_directive('dict', RegistryDirective)
